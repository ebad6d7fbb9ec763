#include "papertrail/trust.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/text.hpp"

namespace papertrail::trust {

namespace {

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

bool is_stop_char(char c) {
    switch (c) {
        case ',': case ';': case '.': case ':': case '(': case ')': case '[': case ']': case '"':
            return true;
        default:
            return false;
    }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

const std::set<std::string, std::less<>>& connectors() {
    static const std::set<std::string, std::less<>> words = {
        "of", "for", "de", "da", "do", "del", "di", "la", "le", "et", "in", "on", "&", "y", "e", "and",
        "the", "a", "para", "des", "du", "der", "für", "zur", "van", "von", "al"};
    return words;
}

bool is_capitalized(std::string_view w) {
    if (w.empty()) return false;
    const auto c = static_cast<unsigned char>(w.front());
    return (c >= 'A' && c <= 'Z') || c >= 0x80;
}

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < s.size() && is_space(s[pos])) ++pos;
    }
    [[nodiscard]] bool at_end() const { return pos >= s.size(); }
    [[nodiscard]] char peek() const { return s[pos]; }

    /// Word at the cursor without consuming it; empty at punctuation or end.
    [[nodiscard]] std::string_view peek_word(std::size_t from) const {
        std::size_t p = from;
        while (p < s.size() && is_space(s[p])) ++p;
        std::size_t e = p;
        while (e < s.size() && !is_space(s[e]) && !is_stop_char(s[e])) ++e;
        return s.substr(p, e - p);
    }
    std::string_view take_word() {
        skip_space();
        std::size_t e = pos;
        while (e < s.size() && !is_space(s[e]) && !is_stop_char(s[e])) ++e;
        auto w = s.substr(pos, e - pos);
        pos = e;
        return w;
    }
};

/// Parses one maximal capitalized phrase. Sets `chain` when an "and the"
/// separator introduces another funder.
std::string parse_name(Cursor& cur, bool& chain) {
    chain = false;
    std::vector<std::string_view> words;
    cur.skip_space();
    if (text::iequals(cur.peek_word(cur.pos), "the")) cur.take_word();
    while (true) {
        cur.skip_space();
        if (cur.at_end() || is_stop_char(cur.peek())) break;
        const std::size_t before = cur.pos;
        const auto w = cur.peek_word(cur.pos);
        if (w.empty()) break;
        if (w == "and") {
            cur.take_word();
            const auto next = cur.peek_word(cur.pos);
            if (text::iequals(next, "the")) {
                cur.take_word();
                chain = true;
                break;
            }
            if (is_capitalized(next) && !words.empty()) {
                words.push_back(w);
                continue;
            }
            cur.pos = before;
            break;
        }
        if (is_capitalized(w)) {
            words.push_back(cur.take_word());
            continue;
        }
        if (!words.empty() && connectors().contains(w)) {
            // a run of joiners ("for the", "para a") only continues the name
            // when a capitalized word follows it
            std::vector<std::string_view> run;
            std::size_t p = cur.pos;
            for (auto x = cur.peek_word(p); !x.empty() && connectors().contains(x) && x != "and"; x = cur.peek_word(p)) {
                run.push_back(x);
                p = static_cast<std::size_t>(x.data() - cur.s.data()) + x.size();
            }
            if (!is_capitalized(cur.peek_word(p))) break;
            words.insert(words.end(), run.begin(), run.end());
            cur.pos = p;
            continue;
        }
        break;
    }
    while (!words.empty() && !is_capitalized(words.back())) words.pop_back();
    std::string name;
    for (const auto w : words) {
        if (!name.empty()) name += ' ';
        name += w;
    }
    return name;
}

/// ", City, Country" after a name: comma-separated segments made only of
/// capitalized words, ending the sentence.
std::optional<std::string> parse_location(Cursor& cur) {
    std::vector<std::string> segments;
    std::size_t p = cur.pos;
    std::size_t committed = cur.pos;
    while (p < cur.s.size() && cur.s[p] == ',') {
        std::size_t e = p + 1;
        while (e < cur.s.size() && !is_stop_char(cur.s[e])) ++e;
        const auto seg = text::trim(cur.s.substr(p + 1, e - p - 1));
        const auto words = text::split_words(seg);
        if (words.empty() || words.size() > 4) break;
        if (!std::all_of(words.begin(), words.end(), [](const std::string& w) { return is_capitalized(w); })) break;
        segments.emplace_back(seg);
        p = e;
        committed = e;
    }
    if (segments.empty()) return std::nullopt;
    cur.pos = committed;
    return text::join(segments, ", ");
}

std::size_t find_cue(std::string_view lowered, std::string_view cue, std::size_t from) {
    while (true) {
        const auto at = lowered.find(cue, from);
        if (at == std::string_view::npos) return at;
        const bool left_ok = at == 0 || !std::isalnum(static_cast<unsigned char>(lowered[at - 1]));
        const std::size_t end = at + cue.size();
        const bool right_ok = end >= lowered.size() || !std::isalnum(static_cast<unsigned char>(lowered[end]));
        if (left_ok && right_ok) return at;
        from = at + 1;
    }
}

}  // namespace

std::string fold_name(std::string_view name) {
    const std::string folded = text::to_lower(text::fold_diacritics(name));
    std::string spaced;
    spaced.reserve(folded.size());
    for (const char c : folded) spaced += is_ascii_punct(static_cast<unsigned char>(c)) ? ' ' : c;
    auto words = text::split_words(spaced);
    if (!words.empty() && words.front() == "the") words.erase(words.begin());
    return text::join(words, " ");
}

Registry::Registry(std::vector<RegistryEntry> entries) : entries_(std::move(entries)) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.registry_id.empty()) throw Error(ErrorCode::InvalidInput, "registry entry without registry_id");
        if (text::trim(e.canonical_name).empty())
            throw Error(ErrorCode::InvalidInput, "registry entry " + e.registry_id + " has an empty name");
        if (!ids.insert(e.registry_id).second)
            throw Error(ErrorCode::InvalidInput, "duplicate registry_id " + e.registry_id);
        by_folded_name_.try_emplace(fold_name(e.canonical_name), i);
        for (const auto& alias : e.aliases) by_folded_name_.try_emplace(fold_name(alias), i);
    }
}

const RegistryEntry* Registry::match(std::string_view name) const {
    const auto it = by_folded_name_.find(fold_name(name));
    return it == by_folded_name_.end() ? nullptr : &entries_[it->second];
}

std::vector<RegistryEntry> parse_registry(std::istream& in) {
    const auto table = csv::read_table(in);
    const auto col = [&](std::string_view name) {
        const auto c = table.column(name);
        if (!c) throw Error(ErrorCode::MissingRequiredColumn, "registry.csv lacks column " + std::string(name));
        return *c;
    };
    const auto id_col = col("registry_id");
    const auto name_col = col("canonical_name");
    const auto alias_col = table.column("aliases");
    const auto country_col = table.column("country");
    const auto type_col = table.column("org_type");
    std::vector<RegistryEntry> out;
    for (const auto& row : table.rows) {
        if (row.error) throw Error(ErrorCode::InvalidInput, "registry.csv line " + std::to_string(row.line) + ": " + *row.error);
        const auto cell = [&](std::optional<std::size_t> c) -> std::string {
            return c && *c < row.fields.size() ? std::string(text::trim(row.fields[*c])) : std::string();
        };
        RegistryEntry e;
        e.registry_id = cell(id_col);
        e.canonical_name = cell(name_col);
        e.aliases = text::split_list(cell(alias_col), '|');
        e.country = cell(country_col);
        if (const auto t = cell(type_col); !t.empty()) {
            const auto parsed = parse_org_type(t);
            if (!parsed) throw Error(ErrorCode::InvalidInput, "registry.csv line " + std::to_string(row.line) + ": unknown org_type " + t);
            e.org_type = *parsed;
        }
        out.push_back(std::move(e));
    }
    return out;
}

void write_registry(std::ostream& out, const std::vector<RegistryEntry>& entries) {
    csv::write_row(out, {"registry_id", "canonical_name", "aliases", "country", "org_type"});
    for (const auto& e : entries) {
        csv::write_row(out, {e.registry_id, e.canonical_name, text::join_list(e.aliases, '|'), e.country,
                             std::string(to_string(e.org_type))});
    }
}

const std::vector<std::string>& default_cue_phrases() {
    static const std::vector<std::string> cues = {"supported by", "funded by", "concede the support by",
                                                  "grant from"};
    return cues;
}

std::vector<FunderCandidate> extract_funder_mentions(std::string_view funding_text,
                                                     const std::vector<std::string>& cues) {
    std::vector<FunderCandidate> out;
    if (funding_text.empty()) return out;
    const std::string lowered = text::to_lower(funding_text);

    std::vector<std::size_t> starts;
    for (const auto& cue : cues) {
        const std::string lc = text::to_lower(cue);
        for (auto at = find_cue(lowered, lc, 0); at != std::string::npos; at = find_cue(lowered, lc, at + 1)) {
            starts.push_back(at + lc.size());
        }
    }
    std::sort(starts.begin(), starts.end());

    std::set<std::string> seen;
    for (const auto start : starts) {
        Cursor cur{funding_text, start};
        bool chain = true;
        while (chain) {
            auto name = parse_name(cur, chain);
            if (name.empty()) break;
            FunderCandidate c{std::move(name), std::nullopt};
            if (!chain) c.location = parse_location(cur);
            if (!chain && c.location) {
                // "X, City, Country and the Y" continues the list after the location.
                const std::size_t saved = cur.pos;
                if (cur.take_word() == "and" && text::iequals(cur.peek_word(cur.pos), "the")) {
                    cur.take_word();
                    chain = true;
                } else {
                    cur.pos = saved;
                }
            }
            if (seen.insert(fold_name(c.name)).second) out.push_back(std::move(c));
        }
    }
    return out;
}

FunderVerification verify_funders(const std::vector<std::string>& candidates, const Registry& registry) {
    FunderVerification v;
    for (const auto& name : candidates) {
        const std::string clean(text::trim(name));
        if (const auto* e = registry.match(clean)) {
            v.matched.emplace_back(clean, e->registry_id);
        } else {
            v.unmatched.push_back(clean);
        }
    }
    return v;
}

std::string_view to_string(Severity s) noexcept {
    switch (s) {
        case Severity::None: return "None";
        case Severity::Low: return "Low";
        case Severity::High: return "High";
    }
    return "None";
}

std::vector<std::string> funder_candidates(const PublicationRecord& record, const std::vector<std::string>& cues) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    const auto add = [&](const std::string& name) {
        const std::string clean(text::trim(name));
        if (clean.empty()) return;
        if (seen.insert(fold_name(clean)).second) out.push_back(clean);
    };
    for (const auto& f : record.funders) add(f.name);
    if (record.funding_statement) {
        for (const auto& c : extract_funder_mentions(*record.funding_statement, cues)) add(c.name);
    }
    return out;
}

TrustMarkerReport publication_trust_report(const PublicationRecord& record, const Registry& registry,
                                           const identity::ProfileIndex& profiles) {
    TrustMarkerReport r;
    r.publication_id = record.publication_id;
    r.candidates = funder_candidates(record);
    auto v = verify_funders(r.candidates, registry);
    r.matched_funders = std::move(v.matched);
    r.unmatched_funders = std::move(v.unmatched);

    for (const auto& author : record.authors) {
        const auto idx = profiles.find(author);
        const std::string pid = idx ? profiles.at(*idx).profile_id : identity::mention_source_id(author);
        if (!author.source_researcher_id) r.missing_identifier_profiles.push_back(pid);
        if (author.emails.size() < 2) continue;
        std::map<std::string, std::vector<std::string>> by_key;
        for (const auto& e : author.emails) {
            try {
                by_key[identity::email_variant_key(e)].push_back(e);
            } catch (const Error&) {
                // not an address; nothing to compare
            }
        }
        EmailAnomaly anomaly{pid, {}, {}};
        for (const auto& [key, emails] : by_key) {
            if (emails.size() < 2) continue;
            anomaly.variant_keys.push_back(key);
            anomaly.emails.insert(anomaly.emails.end(), emails.begin(), emails.end());
        }
        if (!anomaly.variant_keys.empty()) r.email_anomalies.push_back(std::move(anomaly));
    }

    if (!r.unmatched_funders.empty() || !r.email_anomalies.empty()) {
        r.severity = Severity::High;
    } else if (!r.missing_identifier_profiles.empty()) {
        r.severity = Severity::Low;
    }
    return r;
}

TrustSummary corpus_trust_summary(const std::vector<PublicationRecord>& records,
                                  const std::vector<identity::ResearcherProfile>& profiles, const Registry& registry) {
    TrustSummary s;
    s.publication_count = records.size();
    s.missing_identifier_author_count = static_cast<std::size_t>(std::count_if(
        profiles.begin(), profiles.end(), [](const auto& p) { return !p.has_persistent_identifier; }));
    const identity::ProfileIndex index(profiles);
    s.reports.reserve(records.size());
    for (const auto& rec : records) {
        auto rep = publication_trust_report(rec, registry, index);
        std::set<std::string> once;
        for (const auto& name : rep.unmatched_funders) {
            if (once.insert(fold_name(name)).second) ++s.unmatched_funder_names[name];
        }
        if (rep.severity == Severity::High) ++s.high_severity_publication_count;
        if (rep.severity == Severity::Low) ++s.low_severity_publication_count;
        s.reports.push_back(std::move(rep));
    }
    return s;
}

}  // namespace papertrail::trust
