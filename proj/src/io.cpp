#include "papertrail/io.hpp"

#include <fstream>
#include <sstream>

#include "papertrail/error.hpp"

namespace papertrail::io {

namespace {

template <class F>
auto guarded(const char* what, F f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed ") + what + " document: " + e.what());
    }
}

Json money_json(const std::optional<Money>& m) { return m ? Json(m->to_string()) : Json(nullptr); }

std::optional<Money> money_from(const Json& j) {
    if (j.is_null()) return std::nullopt;
    auto m = Money::parse(j.get<std::string>());
    if (!m) throw Error(ErrorCode::InvalidInput, "bad money amount " + j.dump());
    return m;
}

Json composition_json(const std::vector<double>& v) { return Json(v); }

template <class Set>
Json list(const Set& s) {
    auto a = Json::array();
    for (const auto& v : s) a.push_back(v);
    return a;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, path + " is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << contents;
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path);
}

// ---------------------------------------------------------------------------
// profiles

Json profiles_to_json(const identity::Resolution& resolution) {
    Json doc;
    std::size_t source_ids = 0;
    auto arr = Json::array();
    for (const auto& p : resolution.profiles) {
        source_ids += p.merged_source_ids.size();
        Json j;
        j["profile_id"] = p.profile_id;
        j["canonical_name"] = p.canonical_name;
        j["merged_source_ids"] = p.merged_source_ids;
        j["has_persistent_identifier"] = p.has_persistent_identifier;
        j["emails"] = list(p.emails);
        j["countries"] = list(p.countries);
        j["org_registry_ids"] = list(p.org_registry_ids);
        j["publication_ids"] = p.publication_ids;
        j["corpus_mentions"] = p.corpus_mentions;
        Json years = Json::object();
        for (const auto& [y, n] : p.pubs_by_year) years[std::to_string(y)] = n;
        j["pubs_by_year"] = std::move(years);
        arr.push_back(std::move(j));
    }
    doc["source_id_count"] = source_ids;
    doc["profile_count"] = resolution.profiles.size();
    doc["profiles"] = std::move(arr);
    doc["warnings"] = resolution.warnings;
    return doc;
}

std::vector<identity::ResearcherProfile> profiles_from_json(const Json& doc) {
    return guarded("profiles", [&] {
        std::vector<identity::ResearcherProfile> out;
        for (const auto& j : doc.at("profiles")) {
            identity::ResearcherProfile p;
            p.profile_id = j.at("profile_id").get<std::string>();
            p.canonical_name = j.at("canonical_name").get<std::string>();
            p.merged_source_ids = j.at("merged_source_ids").get<std::vector<std::string>>();
            p.has_persistent_identifier = j.at("has_persistent_identifier").get<bool>();
            for (const auto& e : j.at("emails")) p.emails.insert(e.get<std::string>());
            for (const auto& c : j.at("countries")) p.countries.insert(c.get<std::string>());
            for (const auto& o : j.at("org_registry_ids")) p.org_registry_ids.insert(o.get<std::string>());
            p.publication_ids = j.at("publication_ids").get<std::vector<std::string>>();
            p.corpus_mentions = j.at("corpus_mentions").get<std::size_t>();
            for (const auto& [y, n] : j.at("pubs_by_year").items()) {
                p.pubs_by_year[std::stoi(y)] = n.get<long long>();
            }
            out.push_back(std::move(p));
        }
        return out;
    });
}

Json proposals_to_json(const std::vector<identity::MergeEntry>& proposals) {
    Json doc;
    doc["provenance"] = "proposed";
    auto arr = Json::array();
    for (const auto& e : proposals) {
        Json j;
        j["profile_key"] = e.profile_key;
        j["canonical_name"] = e.canonical_name;
        j["source_ids"] = e.source_ids;
        arr.push_back(std::move(j));
    }
    doc["proposals"] = std::move(arr);
    return doc;
}

// ---------------------------------------------------------------------------
// screening and trust

Json screening_to_json(const std::vector<PublicationRecord>& input, const screening::ScreeningResult& result,
                       const screening::ScreeningCriteria& criteria) {
    Json doc;
    Json c;
    c["phrase"] = criteria.phrase;
    c["max_authors"] = criteria.max_authors;
    c["exclude_reviewer_only"] = criteria.exclude_reviewer_only;
    auto types = Json::array();
    for (const auto t : criteria.allowed_document_types) types.push_back(to_string(t));
    c["allowed_document_types"] = std::move(types);
    doc["criteria"] = std::move(c);
    const auto& r = result.report;
    Json rep;
    rep["input"] = r.input_count;
    rep["retraction_notices"] = r.retraction_notice_count;
    rep["document_type"] = r.doc_type_excluded_count;
    rep["reviewer_only"] = r.reviewer_only_count;
    rep["too_many_authors"] = r.too_many_authors_count;
    rep["included"] = r.included_count;
    doc["report"] = std::move(rep);
    auto recs = Json::array();
    for (std::size_t i = 0; i < input.size(); ++i) {
        Json j;
        j["publication_id"] = input[i].publication_id;
        j["classification"] = to_string(result.classes[i]);
        recs.push_back(std::move(j));
    }
    doc["records"] = std::move(recs);
    return doc;
}

screening::ScreeningReport screening_report_from_json(const Json& doc) {
    return guarded("screening", [&] {
        const auto& r = doc.at("report");
        screening::ScreeningReport out;
        out.input_count = r.at("input").get<std::size_t>();
        out.retraction_notice_count = r.at("retraction_notices").get<std::size_t>();
        out.doc_type_excluded_count = r.at("document_type").get<std::size_t>();
        out.reviewer_only_count = r.at("reviewer_only").get<std::size_t>();
        out.too_many_authors_count = r.at("too_many_authors").get<std::size_t>();
        out.included_count = r.at("included").get<std::size_t>();
        return out;
    });
}

Json trust_to_json(const trust::TrustSummary& s) {
    Json doc;
    doc["publication_count"] = s.publication_count;
    doc["missing_identifier_author_count"] = s.missing_identifier_author_count;
    doc["high_severity_publications"] = s.high_severity_publication_count;
    doc["low_severity_publications"] = s.low_severity_publication_count;
    Json names = Json::object();
    for (const auto& [name, n] : s.unmatched_funder_names) names[name] = n;
    doc["unmatched_funders"] = std::move(names);
    auto reps = Json::array();
    for (const auto& r : s.reports) {
        Json j;
        j["publication_id"] = r.publication_id;
        j["severity"] = trust::to_string(r.severity);
        j["funder_candidates"] = r.candidates;
        j["unmatched_funders"] = r.unmatched_funders;
        auto matched = Json::array();
        for (const auto& [name, id] : r.matched_funders) matched.push_back(Json{{"name", name}, {"registry_id", id}});
        j["matched_funders"] = std::move(matched);
        auto emails = Json::array();
        for (const auto& e : r.email_anomalies) {
            emails.push_back(Json{{"profile_id", e.profile_id}, {"variant_keys", e.variant_keys}, {"emails", e.emails}});
        }
        j["email_anomalies"] = std::move(emails);
        j["missing_identifier_profiles"] = r.missing_identifier_profiles;
        reps.push_back(std::move(j));
    }
    doc["publications"] = std::move(reps);
    return doc;
}

// ---------------------------------------------------------------------------
// cluster solution

Json solution_to_json(const temporal::ClusterSolution& s) {
    Json doc;
    doc["windows"] = s.windows.to_string();
    Json cfg;
    cfg["linkage"] = temporal::to_string(s.config.linkage);
    cfg["k_min"] = s.config.k_min;
    cfg["k_max"] = s.config.k_max;
    cfg["gap_iterations"] = s.config.gap_iterations;
    cfg["seed"] = s.config.seed;
    cfg["zero_fraction"] = s.config.zero_replacement.fraction;
    doc["config"] = std::move(cfg);
    doc["k"] = s.k;
    doc["gap_k"] = s.selection.gap_k;
    doc["agreement"] = s.selection.agreement;
    doc["clustered_count"] = s.profile_ids.size();

    auto cents = Json::array();
    for (const auto& c : s.centroids) {
        Json j;
        j["label"] = c.label;
        j["proportions"] = composition_json(c.centroid.parts);
        j["size"] = c.size;
        j["percentage"] = c.percentage;
        cents.push_back(std::move(j));
    }
    doc["centroids"] = std::move(cents);

    auto sil = Json::array();
    for (const auto& p : s.silhouette_curve) sil.push_back(Json{{"k", p.k}, {"average", p.average}});
    doc["silhouette_curve"] = std::move(sil);
    auto gap = Json::array();
    for (const auto& g : s.gap_curve) {
        gap.push_back(Json{{"k", g.k},
                           {"log_w", g.log_w},
                           {"expected_log_w", g.expected_log_w},
                           {"gap", g.gap},
                           {"standard_error", g.standard_error}});
    }
    doc["gap_curve"] = std::move(gap);

    auto members = Json::array();
    for (std::size_t i = 0; i < s.profile_ids.size(); ++i) {
        Json j;
        j["profile_id"] = s.profile_ids[i];
        j["label"] = s.labels[i];
        j["counts"] = s.counts[i];
        j["raw"] = composition_json(s.raw_proportions[i].parts);
        j["composition"] = composition_json(s.compositions[i].parts);
        j["clr"] = composition_json(s.clr_vectors[i].coords);
        j["silhouette"] = s.silhouette_values[i];
        members.push_back(std::move(j));
    }
    doc["assignments"] = std::move(members);
    doc["excluded_profiles"] = s.excluded_profile_ids;

    Json tree;
    tree["leaf_count"] = s.dendrogram.leaf_count;
    auto merges = Json::array();
    for (const auto& m : s.dendrogram.merges) merges.push_back(Json{m.left, m.right, m.height, m.size});
    tree["merges"] = std::move(merges);
    doc["dendrogram"] = std::move(tree);
    return doc;
}

temporal::ClusterSolution solution_from_json(const Json& doc) {
    return guarded("solution", [&] {
        temporal::ClusterSolution s;
        s.windows = temporal::PeriodWindows::parse(doc.at("windows").get<std::string>());
        const auto& cfg = doc.at("config");
        s.config.linkage = temporal::parse_linkage(cfg.at("linkage").get<std::string>());
        s.config.k_min = cfg.at("k_min").get<std::size_t>();
        s.config.k_max = cfg.at("k_max").get<std::size_t>();
        s.config.gap_iterations = cfg.at("gap_iterations").get<std::size_t>();
        s.config.seed = cfg.at("seed").get<std::uint64_t>();
        s.config.zero_replacement.fraction = cfg.at("zero_fraction").get<double>();
        s.k = doc.at("k").get<std::size_t>();
        s.selection.k = s.k;
        s.selection.gap_k = doc.at("gap_k").get<std::size_t>();
        s.selection.agreement = doc.at("agreement").get<bool>();
        for (const auto& j : doc.at("centroids")) {
            temporal::ClusterCentroid c;
            c.label = j.at("label").get<int>();
            c.centroid.parts = j.at("proportions").get<std::vector<double>>();
            c.size = j.at("size").get<std::size_t>();
            c.percentage = j.at("percentage").get<double>();
            s.centroids.push_back(std::move(c));
        }
        for (const auto& j : doc.at("silhouette_curve")) {
            s.silhouette_curve.push_back({j.at("k").get<std::size_t>(), j.at("average").get<double>()});
        }
        for (const auto& j : doc.at("gap_curve")) {
            temporal::GapPoint g;
            g.k = j.at("k").get<std::size_t>();
            g.log_w = j.at("log_w").get<double>();
            g.expected_log_w = j.at("expected_log_w").get<double>();
            g.gap = j.at("gap").get<double>();
            g.standard_error = j.at("standard_error").get<double>();
            s.gap_curve.push_back(g);
        }
        for (const auto& j : doc.at("assignments")) {
            s.profile_ids.push_back(j.at("profile_id").get<std::string>());
            s.labels.push_back(j.at("label").get<int>());
            s.counts.push_back(j.at("counts").get<temporal::PeriodCounts>());
            s.raw_proportions.push_back({j.at("raw").get<std::vector<double>>()});
            s.compositions.push_back({j.at("composition").get<std::vector<double>>()});
            s.clr_vectors.push_back({j.at("clr").get<std::vector<double>>()});
            s.silhouette_values.push_back(j.at("silhouette").get<double>());
        }
        s.excluded_profile_ids = doc.at("excluded_profiles").get<std::vector<std::string>>();
        const auto& tree = doc.at("dendrogram");
        s.dendrogram.leaf_count = tree.at("leaf_count").get<std::size_t>();
        for (const auto& m : tree.at("merges")) {
            s.dendrogram.merges.push_back(
                {m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>(), m.at(2).get<double>(), m.at(3).get<std::size_t>()});
        }
        return s;
    });
}

// ---------------------------------------------------------------------------
// network

Json network_to_json(const NetworkDocument& doc) {
    const auto& g = doc.graph;
    Json out;
    Json graph;
    graph["node_count"] = g.node_count();
    graph["edge_count"] = g.edge_count();
    graph["average_clustering_coefficient"] = network::average_clustering_coefficient(g);
    Json degrees = Json::object();
    for (const auto& [d, n] : network::degree_histogram(g)) degrees[std::to_string(d)] = n;
    graph["degree_histogram"] = std::move(degrees);
    auto nodes = Json::array();
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        nodes.push_back(Json{{"profile_id", g.nodes()[i]},
                             {"degree", g.degree(i)},
                             {"clustering_coefficient", network::local_clustering_coefficient(g, i)}});
    }
    graph["nodes"] = std::move(nodes);
    out["graph"] = std::move(graph);

    const auto& c = doc.citations;
    out["citations"] = Json{{"count", c.count},
                            {"mean", c.mean},
                            {"median", c.median},
                            {"total", c.total},
                            {"uncited", c.uncited_count},
                            {"cited_below_10", c.low_cited_count}};

    const auto& a = doc.author_counts;
    Json ac;
    ac["threshold"] = a.threshold;
    ac["field_norm"] = a.field_norm ? Json(*a.field_norm) : Json(nullptr);
    ac["mean_authors"] = a.mean_authors;
    ac["norm_ratio"] = a.norm_ratio ? Json(*a.norm_ratio) : Json(nullptr);
    Json hist = Json::object();
    for (const auto& [n, k] : a.histogram) hist[std::to_string(n)] = k;
    ac["histogram"] = std::move(hist);
    ac["flagged"] = a.flagged;
    out["author_counts"] = std::move(ac);
    return out;
}

// ---------------------------------------------------------------------------
// funding

Json funding_to_json(const funding::FundingSummary& s, const std::vector<funding::NewGrantee>& grantees,
                     const std::map<std::string, std::size_t>& per_grant) {
    Json doc;
    doc["windows"] = s.windows.to_string();
    doc["rates_as_of"] = s.rates_as_of;
    doc["funded_researcher_count"] = s.funded_researcher_count();
    doc["grant_count"] = s.grants.size();
    doc["usd_total"] = s.usd_total.to_string();
    Json cur = Json::object();
    for (const auto& [c, m] : s.totals_by_currency) cur[c] = m.to_string();
    doc["totals_by_currency"] = std::move(cur);
    doc["funder_countries"] = list(s.funder_countries);
    doc["researcher_countries"] = list(s.researcher_countries);
    doc["grants_without_amount"] = s.grants_without_amount;
    doc["warnings"] = s.warnings;

    auto grants = Json::array();
    for (const auto& g : s.grants) {
        Json j;
        j["grant_id"] = g.grant_id;
        j["funder_name"] = g.funder_name;
        j["funder_country"] = g.funder_country;
        j["start_year"] = g.start_year;
        j["period"] = temporal::to_string(g.period);
        j["amount"] = money_json(g.amount);
        j["currency"] = g.currency;
        j["usd_equivalent"] = money_json(g.usd_equivalent);
        j["profile_ids"] = g.profile_ids;
        const auto it = per_grant.find(g.grant_id);
        j["network_researchers"] = it == per_grant.end() ? 0 : it->second;
        grants.push_back(std::move(j));
    }
    doc["grants"] = std::move(grants);

    auto researchers = Json::array();
    for (const auto& r : s.researchers) {
        Json j;
        j["profile_id"] = r.profile_id;
        j["canonical_name"] = r.canonical_name;
        j["before_grants"] = r.before_grants;
        j["during_or_after_grants"] = r.during_or_after_grants;
        Json cur_r = Json::object();
        for (const auto& [c, m] : r.totals_by_currency) cur_r[c] = m.to_string();
        j["totals_by_currency"] = std::move(cur_r);
        j["usd_total"] = r.usd_total.to_string();
        j["agencies"] = list(r.agencies);
        j["funder_countries"] = list(r.funder_countries);
        researchers.push_back(std::move(j));
    }
    doc["researchers"] = std::move(researchers);

    auto fresh = Json::array();
    for (const auto& n : grantees) {
        Json j;
        j["profile_id"] = n.profile_id;
        j["canonical_name"] = n.canonical_name;
        j["grant_ids"] = n.grant_ids;
        j["agencies"] = list(n.agencies);
        j["countries"] = list(n.countries);
        j["usd_total"] = n.usd_total.to_string();
        fresh.push_back(std::move(j));
    }
    doc["new_grantees"] = std::move(fresh);
    return doc;
}

funding::FundingSummary funding_from_json(const Json& doc) {
    return guarded("funding", [&] {
        funding::FundingSummary s;
        s.windows = temporal::PeriodWindows::parse(doc.at("windows").get<std::string>());
        s.rates_as_of = doc.at("rates_as_of").get<std::string>();
        s.usd_total = *money_from(doc.at("usd_total"));
        for (const auto& [c, m] : doc.at("totals_by_currency").items()) s.totals_by_currency[c] = *money_from(m);
        for (const auto& c : doc.at("funder_countries")) s.funder_countries.insert(c.get<std::string>());
        for (const auto& c : doc.at("researcher_countries")) s.researcher_countries.insert(c.get<std::string>());
        s.grants_without_amount = doc.at("grants_without_amount").get<std::size_t>();
        s.warnings = doc.at("warnings").get<std::vector<std::string>>();
        for (const auto& j : doc.at("grants")) {
            funding::GrantSummary g;
            g.grant_id = j.at("grant_id").get<std::string>();
            g.funder_name = j.at("funder_name").get<std::string>();
            g.funder_country = j.at("funder_country").get<std::string>();
            g.start_year = j.at("start_year").get<int>();
            g.period = s.windows.classify(g.start_year);
            g.amount = money_from(j.at("amount"));
            g.currency = j.at("currency").get<std::string>();
            g.usd_equivalent = money_from(j.at("usd_equivalent"));
            g.profile_ids = j.at("profile_ids").get<std::vector<std::string>>();
            s.grants.push_back(std::move(g));
        }
        for (const auto& j : doc.at("researchers")) {
            funding::ResearcherFunding r;
            r.profile_id = j.at("profile_id").get<std::string>();
            r.canonical_name = j.at("canonical_name").get<std::string>();
            r.before_grants = j.at("before_grants").get<std::vector<std::string>>();
            r.during_or_after_grants = j.at("during_or_after_grants").get<std::vector<std::string>>();
            for (const auto& [c, m] : j.at("totals_by_currency").items()) r.totals_by_currency[c] = *money_from(m);
            r.usd_total = *money_from(j.at("usd_total"));
            for (const auto& a : j.at("agencies")) r.agencies.insert(a.get<std::string>());
            for (const auto& c : j.at("funder_countries")) r.funder_countries.insert(c.get<std::string>());
            s.researchers.push_back(std::move(r));
        }
        return s;
    });
}

std::vector<funding::NewGrantee> new_grantees_from_json(const Json& doc) {
    return guarded("funding", [&] {
        std::vector<funding::NewGrantee> out;
        for (const auto& j : doc.at("new_grantees")) {
            funding::NewGrantee n;
            n.profile_id = j.at("profile_id").get<std::string>();
            n.canonical_name = j.at("canonical_name").get<std::string>();
            n.grant_ids = j.at("grant_ids").get<std::vector<std::string>>();
            for (const auto& a : j.at("agencies")) n.agencies.insert(a.get<std::string>());
            for (const auto& c : j.at("countries")) n.countries.insert(c.get<std::string>());
            n.usd_total = *money_from(j.at("usd_total"));
            out.push_back(std::move(n));
        }
        return out;
    });
}

}  // namespace papertrail::io
