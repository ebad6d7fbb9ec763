// papertrail command-line driver. Each subcommand reads the files written by
// the previous stage and writes its own JSON/CSV output.
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "papertrail/corpus.hpp"
#include "papertrail/error.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/io.hpp"
#include "papertrail/network.hpp"
#include "papertrail/report.hpp"
#include "papertrail/screening.hpp"
#include "papertrail/synth.hpp"
#include "papertrail/temporal.hpp"
#include "papertrail/text.hpp"
#include "papertrail/trust.hpp"

namespace fs = std::filesystem;
using namespace papertrail;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    return out;
}

std::vector<PublicationRecord> read_corpus(const std::string& path) {
    auto parsed = load_corpus(path);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    for (const auto& m : parsed.malformed_rows) {
        std::cerr << "warning: " << path << ":" << m.line << ": skipped malformed row (" << m.reason << ")\n";
    }
    return std::move(parsed.records);
}

std::vector<identity::ResearcherProfile> read_profiles(const std::string& path) {
    return io::profiles_from_json(io::read_json_file(path));
}

// ---------------------------------------------------------------------------

struct ScreenArgs {
    std::string corpus;
    std::string phrase = screening::ScreeningCriteria{}.phrase;
    int max_authors = 25;
    bool keep_reviewer_only = false;
    std::string out;
    std::string report;
};

int run_screen(const ScreenArgs& a) {
    screening::ScreeningCriteria criteria;
    criteria.phrase = a.phrase;
    criteria.max_authors = a.max_authors;
    criteria.exclude_reviewer_only = !a.keep_reviewer_only;
    criteria.validate();
    const auto records = read_corpus(a.corpus);
    const auto result = screening::screen(records, criteria);
    const auto& r = result.report;
    if (!a.out.empty()) save_corpus(a.out, result.included);
    if (!a.report.empty()) io::write_json_file(a.report, io::screening_to_json(records, result, criteria));
    std::cout << "input " << r.input_count << ", retraction notices " << r.retraction_notice_count
              << ", document type " << r.doc_type_excluded_count << ", reviewer-only " << r.reviewer_only_count
              << ", too many authors " << r.too_many_authors_count << ", included " << r.included_count << "\n";
    return 0;
}

struct ResolveArgs {
    std::string corpus;
    std::string merges;
    std::string careers;
    std::string out;
    std::string proposals;
};

int run_resolve(const ResolveArgs& a) {
    const auto records = read_corpus(a.corpus);
    identity::MergeMap merges;
    if (!a.merges.empty()) {
        auto in = open_in(a.merges);
        merges = identity::parse_merges(in);
    }
    std::vector<identity::CareerEntry> careers;
    if (!a.careers.empty()) {
        auto in = open_in(a.careers);
        careers = identity::parse_careers(in);
    }
    const auto resolution = identity::resolve(records, merges, careers);
    for (const auto& w : resolution.warnings) std::cerr << "warning: " << w << "\n";
    io::write_json_file(a.out, io::profiles_to_json(resolution));
    std::size_t ids = 0;
    for (const auto& p : resolution.profiles) ids += p.merged_source_ids.size();
    std::cout << resolution.profiles.size() << " profiles from " << ids << " source IDs\n";
    if (!a.proposals.empty()) {
        const auto proposals = identity::propose_merges(identity::collect_mentions(records));
        io::write_json_file(a.proposals, io::proposals_to_json(proposals));
        std::cout << proposals.size() << " merge proposals written for review\n";
    }
    return 0;
}

struct TrustArgs {
    std::string corpus;
    std::string registry;
    std::string profiles;
    std::string out;
};

int run_trust(const TrustArgs& a) {
    const auto records = read_corpus(a.corpus);
    auto in = open_in(a.registry);
    const trust::Registry registry(trust::parse_registry(in));
    std::vector<identity::ResearcherProfile> profiles;
    if (!a.profiles.empty()) {
        profiles = read_profiles(a.profiles);
    } else {
        profiles = identity::resolve(records, {}).profiles;
    }
    const auto summary = trust::corpus_trust_summary(records, profiles, registry);
    io::write_json_file(a.out, io::trust_to_json(summary));
    std::cout << summary.publication_count << " publications, " << summary.high_severity_publication_count
              << " high severity, " << summary.low_severity_publication_count << " low severity, "
              << summary.missing_identifier_author_count << " authors without identifiers\n";
    return 0;
}

struct ClusterArgs {
    std::string profiles;
    std::string windows = temporal::PeriodWindows{}.to_string();
    std::string linkage = "ward";
    std::size_t kmin = 2;
    std::size_t kmax = 15;
    std::size_t gap_iters = 100;
    std::uint64_t seed = 42;
    std::string out;
};

int run_cluster(const ClusterArgs& a) {
    const auto windows = temporal::PeriodWindows::parse(a.windows);
    temporal::ClusterConfig config;
    config.linkage = temporal::parse_linkage(a.linkage);
    config.k_min = a.kmin;
    config.k_max = a.kmax;
    config.gap_iterations = a.gap_iters;
    config.seed = a.seed;
    const auto solution = temporal::run_pipeline(read_profiles(a.profiles), windows, config);
    io::write_json_file(a.out, io::solution_to_json(solution));
    std::cout << "k = " << solution.k << " by silhouette; gap statistic "
              << (solution.selection.agreement ? "agrees" : "prefers k = " + std::to_string(solution.selection.gap_k))
              << "\n";
    for (const auto& c : solution.centroids) {
        std::cout << "  cluster " << c.label + 1 << ": " << c.size << " authors\n";
    }
    return 0;
}

struct NetworkArgs {
    std::string corpus;
    std::string profiles;
    std::size_t flag_above = 25;
    std::optional<double> field_norm;
    std::string count_corpus;
    std::string out;
    std::string edges;
};

int run_network(const NetworkArgs& a) {
    const auto records = read_corpus(a.corpus);
    const auto profiles = read_profiles(a.profiles);
    io::NetworkDocument doc;
    doc.graph = network::build_coauthor_graph(records, profiles);
    doc.citations = network::citation_stats(records);
    const auto count_records = a.count_corpus.empty() ? records : read_corpus(a.count_corpus);
    doc.author_counts = network::author_count_anomalies(count_records, a.flag_above, a.field_norm);
    io::write_json_file(a.out, io::network_to_json(doc));
    if (!a.edges.empty()) {
        auto out = open_out(a.edges);
        network::write_edges(out, doc.graph);
    }
    std::cout << doc.graph.node_count() << " authors, " << doc.graph.edge_count() << " co-authorship links, "
              << doc.citations.total << " citations, " << doc.author_counts.flagged.size()
              << " papers above " << a.flag_above << " authors\n";
    return 0;
}

struct FundingArgs {
    std::string grants;
    std::string rates;
    std::string profiles;
    std::string windows = temporal::PeriodWindows{}.to_string();
    std::string out;
};

int run_funding(const FundingArgs& a) {
    auto gin = open_in(a.grants);
    const auto grants = parse_grants(gin);
    for (const auto& m : grants.malformed_rows) {
        std::cerr << "warning: " << a.grants << ":" << m.line << ": skipped malformed row (" << m.reason << ")\n";
    }
    auto rin = open_in(a.rates);
    const auto rates = funding::parse_rates(rin);
    const auto profiles = read_profiles(a.profiles);
    const auto windows = temporal::PeriodWindows::parse(a.windows);
    const auto summary = funding::aggregate_funding(grants.grants, profiles, rates, windows);
    for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
    const auto grantees = funding::new_grantees(summary);
    const auto per_grant = funding::researchers_per_grant(grants.grants, profiles);
    io::write_json_file(a.out, io::funding_to_json(summary, grantees, per_grant));
    std::cout << summary.funded_researcher_count() << " funded researchers, " << summary.usd_total.to_string()
              << " USD across " << summary.funder_countries.size() << " funder countries; " << grantees.size()
              << " new grantees\n";
    return 0;
}

struct ReportArgs {
    std::string corpus;
    std::string screening;
    std::string profiles;
    std::string solution;
    std::string network;
    std::string funding;
    std::vector<std::string> formats = {"csv", "md", "svg"};
    std::string out;
};

report::ReportTable network_table(const io::Json& doc) {
    report::ReportTable t;
    t.title = "Co-authorship network and citations";
    t.columns = {"Metric", "Value"};
    const auto row = [&](const std::string& name, report::Cell value) {
        t.rows.push_back({report::RowKind::Data, {name, std::move(value)}});
    };
    const auto& g = doc.at("graph");
    const auto& c = doc.at("citations");
    row("Authors", report::Fixed{g.at("node_count").get<double>(), 0});
    row("Co-authorship links", report::Fixed{g.at("edge_count").get<double>(), 0});
    row("Average clustering coefficient", report::Fixed{g.at("average_clustering_coefficient").get<double>(), 3});
    row("Publications", report::Fixed{c.at("count").get<double>(), 0});
    row("Total citations", report::Fixed{c.at("total").get<double>(), 0});
    row("Mean citations", report::Fixed{c.at("mean").get<double>(), 1});
    row("Median citations", report::Fixed{c.at("median").get<double>(), 1});
    row("Uncited", report::Fixed{c.at("uncited").get<double>(), 0});
    row("Cited fewer than 10 times", report::Fixed{c.at("cited_below_10").get<double>(), 0});
    return t;
}

int run_report(const ReportArgs& a) {
    std::vector<report::Format> formats;
    for (const auto& f : a.formats) formats.push_back(report::parse_format(f));
    std::vector<std::pair<std::string, report::ReportTable>> tables;
    if (!a.screening.empty()) {
        tables.emplace_back("screening",
                            report::screening_funnel(io::screening_report_from_json(io::read_json_file(a.screening))));
    }
    if (!a.corpus.empty()) {
        const auto records = read_corpus(a.corpus);
        tables.emplace_back("publishers", report::publisher_rollup(records));
        tables.emplace_back("per_year", report::per_year_table(records));
    }
    if (!a.profiles.empty()) tables.emplace_back("countries", report::country_counts(read_profiles(a.profiles)));
    if (!a.solution.empty()) {
        tables.emplace_back("clusters", report::cluster_report(io::solution_from_json(io::read_json_file(a.solution))));
    }
    if (!a.network.empty()) {
        try {
            tables.emplace_back("network", network_table(io::read_json_file(a.network)));
        } catch (const io::Json::exception& e) {
            throw Error(ErrorCode::InvalidInput, a.network + ": " + e.what());
        }
    }
    if (!a.funding.empty()) {
        const auto doc = io::read_json_file(a.funding);
        tables.emplace_back("new_grantees",
                            report::new_grantee_table(io::funding_from_json(doc), io::new_grantees_from_json(doc)));
    }
    if (tables.empty()) throw CLI::ValidationError("report", "no stage outputs given");

    fs::create_directories(a.out);
    std::size_t written = 0;
    for (const auto& [name, table] : tables) {
        for (const auto f : formats) {
            const auto path = (fs::path(a.out) / (name + "." + std::string(report::extension(f)))).string();
            io::write_text_file(path, report::render(table, f));
            ++written;
        }
    }
    std::cout << written << " files written to " << a.out << "\n";
    return 0;
}

struct SynthArgs {
    std::string spec;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_synth(const SynthArgs& a) {
    auto spec = synth::default_spec();
    if (!a.spec.empty()) {
        std::map<std::string, std::vector<std::string>> overrides;
        std::vector<CLI::ConfigItem> items;
        try {
            items = CLI::ConfigTOML().from_file(a.spec);
        } catch (const CLI::FileError& e) {
            throw Error(ErrorCode::Io, e.what());
        }
        for (const auto& item : items) {
            if (item.name == "++" || item.name == "--") continue;  // section markers
            auto& values = overrides[item.name];
            values = item.inputs;
        }
        synth::apply_overrides(spec, overrides);
    }
    if (a.seed) spec.seed = *a.seed;
    const auto out = synth::generate_corpus(spec);
    synth::write_output(out, a.out);
    std::cout << out.records.size() << " records, " << out.truth.size() << " network authors, " << out.grants.size()
              << " grants written to " << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forensic scientometrics toolkit: screen a corpus for a research network, resolve authors, "
                 "check trust markers, cluster publication timelines and summarise funding."};
    app.set_config("--config", "", "TOML file with defaults; sections are named after subcommands");
    app.require_subcommand(1);
    app.fallthrough(false);

    ScreenArgs screen_args;
    auto* screen = app.add_subcommand("screen", "Apply the inclusion/exclusion rules");
    screen->add_option("--corpus", screen_args.corpus, "corpus.csv or corpus.jsonl")->required()->check(CLI::ExistingFile);
    screen->add_option("--phrase", screen_args.phrase, "Network phrase")->capture_default_str();
    screen->add_option("--max-authors", screen_args.max_authors, "Exclude papers with more authors")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    screen->add_flag("--keep-reviewer-only", screen_args.keep_reviewer_only,
                     "Keep papers whose only link is a reviewer affiliation");
    screen->add_option("--out", screen_args.out, "Included records (CSV or JSONL by extension)");
    screen->add_option("--report", screen_args.report, "Screening report JSON");

    ResolveArgs resolve_args;
    auto* resolve = app.add_subcommand("resolve", "Build researcher profiles");
    resolve->add_option("--corpus", resolve_args.corpus, "Included records")->required()->check(CLI::ExistingFile);
    resolve->add_option("--merges", resolve_args.merges, "Curated merges.csv")->check(CLI::ExistingFile);
    resolve->add_option("--careers", resolve_args.careers, "careers.csv with non-corpus publications")
        ->check(CLI::ExistingFile);
    resolve->add_option("--out", resolve_args.out, "profiles.json")->required();
    resolve->add_option("--proposals", resolve_args.proposals, "Write merge proposals for manual curation");

    TrustArgs trust_args;
    auto* trust_cmd = app.add_subcommand("trust", "Check funders, emails and identifiers");
    trust_cmd->add_option("--corpus", trust_args.corpus, "Included records")->required()->check(CLI::ExistingFile);
    trust_cmd->add_option("--registry", trust_args.registry, "registry.csv")->required()->check(CLI::ExistingFile);
    trust_cmd->add_option("--profiles", trust_args.profiles, "profiles.json (default: resolve without merges)")
        ->check(CLI::ExistingFile);
    trust_cmd->add_option("--out", trust_args.out, "trust.json")->required();

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "Cluster authors by period composition");
    cluster->add_option("--profiles", cluster_args.profiles, "profiles.json")->required()->check(CLI::ExistingFile);
    cluster->add_option("--windows", cluster_args.windows, "Before,During,After year ranges")->capture_default_str();
    cluster->add_option("--linkage", cluster_args.linkage, "ward, complete or average")
        ->capture_default_str()
        ->check(CLI::IsMember({"ward", "complete", "average"}, CLI::ignore_case));
    cluster->add_option("--kmin", cluster_args.kmin, "Smallest k tried")->capture_default_str();
    cluster->add_option("--kmax", cluster_args.kmax, "Largest k tried")->capture_default_str();
    cluster->add_option("--gap-iters", cluster_args.gap_iters, "Reference data sets for the gap statistic")
        ->capture_default_str();
    cluster->add_option("--seed", cluster_args.seed, "Gap statistic seed")->capture_default_str();
    cluster->add_option("--out", cluster_args.out, "solution.json")->required();

    NetworkArgs network_args;
    auto* network_cmd = app.add_subcommand("network", "Co-authorship graph, citations and author counts");
    network_cmd->add_option("--corpus", network_args.corpus, "Included records")->required()->check(CLI::ExistingFile);
    network_cmd->add_option("--profiles", network_args.profiles, "profiles.json")->required()->check(CLI::ExistingFile);
    network_cmd->add_option("--flag-authors-above", network_args.flag_above, "Author-count threshold")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    network_cmd->add_option("--field-norm", network_args.field_norm, "Typical authors per paper in the field");
    network_cmd->add_option("--count-corpus", network_args.count_corpus,
                            "Records scanned for author counts (default: --corpus)")
        ->check(CLI::ExistingFile);
    network_cmd->add_option("--out", network_args.out, "network.json")->required();
    network_cmd->add_option("--edges", network_args.edges, "Also write edges.csv");

    FundingArgs funding_args;
    auto* funding_cmd = app.add_subcommand("funding", "Aggregate grants of network researchers");
    funding_cmd->add_option("--grants", funding_args.grants, "grants.csv")->required()->check(CLI::ExistingFile);
    funding_cmd->add_option("--rates", funding_args.rates, "rates.csv")->required()->check(CLI::ExistingFile);
    funding_cmd->add_option("--profiles", funding_args.profiles, "profiles.json")->required()->check(CLI::ExistingFile);
    funding_cmd->add_option("--windows", funding_args.windows, "Before,During,After year ranges")->capture_default_str();
    funding_cmd->add_option("--out", funding_args.out, "funding.json")->required();

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "Render tables and charts from stage outputs");
    report_cmd->add_option("--corpus", report_args.corpus, "Included records")->check(CLI::ExistingFile);
    report_cmd->add_option("--screening", report_args.screening, "Screening report JSON")->check(CLI::ExistingFile);
    report_cmd->add_option("--profiles", report_args.profiles, "profiles.json")->check(CLI::ExistingFile);
    report_cmd->add_option("--solution", report_args.solution, "solution.json")->check(CLI::ExistingFile);
    report_cmd->add_option("--network", report_args.network, "network.json")->check(CLI::ExistingFile);
    report_cmd->add_option("--funding", report_args.funding, "funding.json")->check(CLI::ExistingFile);
    report_cmd->add_option("--formats", report_args.formats, "Any of csv, json, md, svg")
        ->delimiter(',')
        ->capture_default_str();
    report_cmd->add_option("--out", report_args.out, "Output directory")->required();

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with known ground truth");
    synth_cmd->add_option("--spec", synth_args.spec, "spec.toml overriding the default spec")->check(CLI::ExistingFile);
    synth_cmd->add_option("--seed", synth_args.seed, "Seed (overrides the spec)");
    synth_cmd->add_option("--out", synth_args.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*screen) return run_screen(screen_args);
        if (*resolve) return run_resolve(resolve_args);
        if (*trust_cmd) return run_trust(trust_args);
        if (*cluster) return run_cluster(cluster_args);
        if (*network_cmd) return run_network(network_args);
        if (*funding_cmd) return run_funding(funding_args);
        if (*report_cmd) return run_report(report_args);
        if (*synth_cmd) return run_synth(synth_args);
    } catch (const CLI::ParseError& e) {
        std::cerr << "papertrail: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "papertrail: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "papertrail: Io: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
