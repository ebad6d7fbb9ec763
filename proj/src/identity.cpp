#include "papertrail/identity.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::identity {

std::string email_variant_key(std::string_view email) {
    const std::string_view e = text::trim(email);
    const auto at = e.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == e.size() ||
        e.find('@', at + 1) != std::string_view::npos) {
        throw Error(ErrorCode::NotAnEmail, std::string(email));
    }
    std::string key;
    bool in_separator_run = false;
    for (char c : e.substr(0, at)) {
        if (c == '.' || c == '-' || c == '_') {
            if (!in_separator_run) key += '.';
            in_separator_run = true;
            continue;
        }
        in_separator_run = false;
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    key += '@';
    key += text::to_lower(e.substr(at + 1));
    return key;
}

namespace {

std::string strip_token(std::string_view token) {
    std::string out;
    for (char c : token) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '\'') out += c;
    }
    return out;
}

}  // namespace

std::string name_key(std::string_view raw_name) {
    const std::string folded = text::to_lower(text::fold_diacritics(text::trim(raw_name)));
    std::string surname;
    std::string given;
    if (auto comma = folded.find(','); comma != std::string::npos) {
        surname = strip_token(folded.substr(0, comma));
        for (const auto& w : text::split_words(folded.substr(comma + 1))) {
            given = strip_token(w);
            if (!given.empty()) break;
        }
    } else {
        std::vector<std::string> tokens;
        for (const auto& w : text::split_words(folded)) {
            auto t = strip_token(w);
            if (!t.empty()) tokens.push_back(std::move(t));
        }
        if (tokens.empty()) return {};
        surname = tokens.back();
        if (tokens.size() > 1) given = tokens.front();
    }
    if (given.empty()) return surname;
    return surname + " " + given.substr(0, 1);
}

std::string synthetic_researcher_id(const AuthorMention& m) {
    const std::string first_aff = m.affiliation_texts.empty() ? std::string() : text::slug(m.affiliation_texts.front());
    const std::string name = text::slug(m.raw_name);
    return std::string(kSyntheticPrefix) + name + ":" + text::hex64(text::fnv1a64(first_aff)).substr(0, 8);
}

std::string mention_source_id(const AuthorMention& m) {
    if (m.source_researcher_id && !text::trim(*m.source_researcher_id).empty()) {
        return std::string(text::trim(*m.source_researcher_id));
    }
    return synthetic_researcher_id(m);
}

bool is_synthetic_id(std::string_view id) { return id.starts_with(kSyntheticPrefix); }

void MergeMap::validate() const {
    std::map<std::string, std::string> owner;
    for (const auto& e : entries) {
        for (const auto& id : e.source_ids) {
            auto [it, inserted] = owner.emplace(id, e.profile_key);
            if (!inserted && it->second != e.profile_key) {
                throw Error(ErrorCode::ConflictingMerge,
                            "source ID " + id + " assigned to both " + it->second + " and " + e.profile_key);
            }
        }
    }
}

MergeMap parse_merges(std::istream& in) {
    const csv::Table table = csv::read_table(in);
    const auto id_col = table.column("source_id");
    const auto key_col = table.column("profile_key");
    const auto name_col = table.column("canonical_name");
    if (!id_col) throw Error(ErrorCode::MissingRequiredColumn, "source_id");
    if (!key_col) throw Error(ErrorCode::MissingRequiredColumn, "profile_key");

    MergeMap map;
    std::map<std::string, std::size_t> by_key;
    for (const auto& row : table.rows) {
        if (row.error || row.fields.size() != table.header.size()) {
            throw Error(ErrorCode::InvalidInput, "merges file line " + std::to_string(row.line) + " is malformed");
        }
        const std::string id(text::trim(row.fields[*id_col]));
        const std::string key(text::trim(row.fields[*key_col]));
        const std::string name = name_col ? std::string(text::trim(row.fields[*name_col])) : std::string();
        if (id.empty() || key.empty()) {
            throw Error(ErrorCode::InvalidInput, "merges file line " + std::to_string(row.line) + " has empty keys");
        }
        auto [it, inserted] = by_key.emplace(key, map.entries.size());
        if (inserted) map.entries.push_back({{}, key, name});
        auto& entry = map.entries[it->second];
        if (std::find(entry.source_ids.begin(), entry.source_ids.end(), id) == entry.source_ids.end()) {
            entry.source_ids.push_back(id);
        }
        if (entry.canonical_name.empty()) entry.canonical_name = name;
    }
    map.validate();
    return map;
}

void write_merges(std::ostream& out, const MergeMap& map) {
    csv::write_row(out, {"source_id", "profile_key", "canonical_name"});
    for (const auto& e : map.entries) {
        for (const auto& id : e.source_ids) csv::write_row(out, {id, e.profile_key, e.canonical_name});
    }
}

std::vector<CareerEntry> parse_careers(std::istream& in) {
    const csv::Table table = csv::read_table(in);
    const auto id_col = table.column("profile_id");
    const auto year_col = table.column("year");
    const auto count_col = table.column("count");
    if (!id_col) throw Error(ErrorCode::MissingRequiredColumn, "profile_id");
    if (!year_col) throw Error(ErrorCode::MissingRequiredColumn, "year");
    if (!count_col) throw Error(ErrorCode::MissingRequiredColumn, "count");
    std::vector<CareerEntry> out;
    for (const auto& row : table.rows) {
        if (row.error || row.fields.size() != table.header.size()) {
            throw Error(ErrorCode::InvalidInput, "careers file line " + std::to_string(row.line) + " is malformed");
        }
        CareerEntry e;
        e.profile_id = std::string(text::trim(row.fields[*id_col]));
        try {
            std::size_t pos = 0;
            e.year = std::stoi(row.fields[*year_col], &pos);
            e.count = std::stoll(row.fields[*count_col]);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "careers file line " + std::to_string(row.line) + " is not numeric");
        }
        if (e.count < 0) {
            throw Error(ErrorCode::InvalidInput, "careers file line " + std::to_string(row.line) + " has a negative count");
        }
        out.push_back(std::move(e));
    }
    return out;
}

void write_careers(std::ostream& out, const std::vector<CareerEntry>& entries) {
    csv::write_row(out, {"profile_id", "year", "count"});
    for (const auto& e : entries) {
        csv::write_row(out, {e.profile_id, std::to_string(e.year), std::to_string(e.count)});
    }
}

std::vector<AuthorMention> collect_mentions(const std::vector<PublicationRecord>& records) {
    std::vector<AuthorMention> out;
    for (const auto& r : records) out.insert(out.end(), r.authors.begin(), r.authors.end());
    return out;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Keeps the smaller index as root so results do not depend on call order.
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

struct IdEvidence {
    std::set<std::string> email_keys;
    std::set<std::string> name_keys;
    std::set<std::string> orgs;
    std::set<std::string> orcids;
    std::map<std::string, std::size_t> names;
};

bool shares(const std::set<std::string>& a, const std::set<std::string>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return true;
        if (*ia < *ib) ++ia; else ++ib;
    }
    return false;
}

std::string pick_name(const std::map<std::string, std::size_t>& names, bool prefer_longest) {
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [name, count] : names) {
        bool better = best == nullptr;
        if (!better && prefer_longest) better = name.size() > best->size();
        if (!better && !prefer_longest) {
            better = count > best_count || (count == best_count && name.size() > best->size());
        }
        if (better) {
            best = &name;
            best_count = count;
        }
    }
    return best ? *best : std::string();
}

}  // namespace

std::vector<MergeEntry> propose_merges(const std::vector<AuthorMention>& mentions) {
    std::map<std::string, IdEvidence> evidence;
    for (const auto& m : mentions) {
        auto& ev = evidence[mention_source_id(m)];
        for (const auto& e : m.emails) {
            try {
                ev.email_keys.insert(email_variant_key(e));
            } catch (const Error&) {
            }
        }
        if (auto k = name_key(m.raw_name); !k.empty()) ev.name_keys.insert(k);
        ev.orgs.insert(m.org_registry_ids.begin(), m.org_registry_ids.end());
        if (m.orcid && !m.orcid->empty()) ev.orcids.insert(*m.orcid);
        ++ev.names[m.raw_name];
    }

    std::vector<std::string> ids;
    std::vector<const IdEvidence*> ev;
    for (const auto& [id, e] : evidence) {
        ids.push_back(id);
        ev.push_back(&e);
    }
    const std::size_t n = ids.size();

    // Bucket IDs by shared keys so only plausible pairs are compared.
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& k : ev[i]->email_keys) buckets["e:" + k].push_back(i);
        for (const auto& k : ev[i]->name_keys) buckets["n:" + k].push_back(i);
    }
    std::set<std::pair<std::size_t, std::size_t>> candidates;
    for (const auto& [key, members] : buckets) {
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) candidates.insert({members[a], members[b]});
        }
    }

    DisjointSets sets(n);
    std::vector<std::set<std::string>> group_orcids(n);
    for (std::size_t i = 0; i < n; ++i) group_orcids[i] = ev[i]->orcids;

    for (const auto& [i, j] : candidates) {
        const bool email_match = shares(ev[i]->email_keys, ev[j]->email_keys);
        const bool name_org_match = shares(ev[i]->name_keys, ev[j]->name_keys) && shares(ev[i]->orgs, ev[j]->orgs);
        if (!email_match && !name_org_match) continue;
        const std::size_t ri = sets.find(i);
        const std::size_t rj = sets.find(j);
        if (ri == rj) continue;
        std::set<std::string> combined = group_orcids[ri];
        combined.insert(group_orcids[rj].begin(), group_orcids[rj].end());
        if (combined.size() > 1) continue;
        sets.unite(ri, rj);
        group_orcids[sets.find(ri)] = std::move(combined);
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(i);

    std::vector<MergeEntry> out;
    for (const auto& [root, members] : groups) {
        if (members.size() < 2) continue;
        MergeEntry entry;
        std::map<std::string, std::size_t> names;
        for (auto m : members) {
            entry.source_ids.push_back(ids[m]);
            for (const auto& [name, count] : ev[m]->names) names[name] += count;
        }
        entry.profile_key = entry.source_ids.front();
        entry.canonical_name = pick_name(names, true);
        out.push_back(std::move(entry));
    }
    return out;
}

Resolution resolve(const std::vector<PublicationRecord>& records, const MergeMap& curated,
                   const std::vector<CareerEntry>& careers) {
    curated.validate();
    std::map<std::string, const MergeEntry*> curated_by_id;
    for (const auto& e : curated.entries) {
        for (const auto& id : e.source_ids) curated_by_id[id] = &e;
    }

    struct Builder {
        ResearcherProfile profile;
        std::map<std::string, std::size_t> names;
        std::set<std::string> seen_publications;
        std::string curated_name;
    };
    std::map<std::string, Builder> builders;
    std::set<std::string> observed;

    for (const auto& r : records) {
        for (const auto& m : r.authors) {
            const std::string source_id = mention_source_id(m);
            observed.insert(source_id);
            auto it = curated_by_id.find(source_id);
            const std::string key = it != curated_by_id.end() ? it->second->profile_key : source_id;
            auto& b = builders[key];
            if (b.profile.profile_id.empty()) {
                b.profile.profile_id = key;
                if (it != curated_by_id.end()) b.curated_name = it->second->canonical_name;
            }
            auto& ids = b.profile.merged_source_ids;
            if (std::find(ids.begin(), ids.end(), source_id) == ids.end()) ids.push_back(source_id);
            ++b.names[m.raw_name];
            b.profile.emails.insert(m.emails.begin(), m.emails.end());
            b.profile.countries.insert(m.countries.begin(), m.countries.end());
            b.profile.org_registry_ids.insert(m.org_registry_ids.begin(), m.org_registry_ids.end());
            ++b.profile.corpus_mentions;
            if (b.seen_publications.insert(r.publication_id).second) {
                b.profile.publication_ids.push_back(r.publication_id);
                ++b.profile.pubs_by_year[r.pub_year];
            }
        }
    }

    Resolution out;
    for (const auto& e : curated.entries) {
        for (const auto& id : e.source_ids) {
            if (!observed.contains(id)) out.warnings.push_back("curated source ID " + id + " not observed in corpus");
        }
    }
    for (const auto& c : careers) {
        auto it = builders.find(c.profile_id);
        if (it == builders.end()) {
            out.warnings.push_back("career history for unknown profile " + c.profile_id);
            continue;
        }
        it->second.profile.pubs_by_year[c.year] += c.count;
    }
    for (auto& [key, b] : builders) {
        auto& p = b.profile;
        std::sort(p.merged_source_ids.begin(), p.merged_source_ids.end());
        p.has_persistent_identifier =
            std::any_of(p.merged_source_ids.begin(), p.merged_source_ids.end(),
                        [](const std::string& id) { return !is_synthetic_id(id); });
        p.canonical_name = !b.curated_name.empty() ? b.curated_name : pick_name(b.names, false);
        out.profiles.push_back(std::move(p));
    }
    return out;
}

ProfileIndex::ProfileIndex(const std::vector<ResearcherProfile>& profiles) : profiles_(profiles) {
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (const auto& id : profiles[i].merged_source_ids) by_source_id_.emplace(id, i);
    }
    // profile keys resolve too, unless they collide with some other source ID
    for (std::size_t i = 0; i < profiles.size(); ++i) by_source_id_.emplace(profiles[i].profile_id, i);
}

std::optional<std::size_t> ProfileIndex::find(std::string_view source_id) const {
    auto it = by_source_id_.find(std::string(source_id));
    if (it == by_source_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ProfileIndex::find(const AuthorMention& mention) const {
    return find(mention_source_id(mention));
}

}  // namespace papertrail::identity
