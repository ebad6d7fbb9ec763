#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "papertrail/corpus.hpp"
#include "papertrail/funding.hpp"
#include "papertrail/identity.hpp"
#include "papertrail/screening.hpp"
#include "papertrail/trust.hpp"

// Deterministic synthetic corpus with planted temporal archetypes, screening
// decoys, funder statements and a grant plan. Everything is derived from the
// spec and its seed through one engine, so output files are byte-stable.
namespace papertrail::synth {

struct Archetype {
    std::string name;
    std::array<double, 3> centroid{};  // Before, During, After; zeros allowed
    std::size_t authors = 0;
    /// Share of each author's total drawn multinomially; the rest is allocated
    /// by rounding the centroid. 1 is a pure multinomial.
    double count_noise = 0.25;
};

struct JournalRow {
    std::string publisher;
    std::string source_title;
    std::size_t articles = 0;
    std::int64_t citations = 0;
    std::size_t chapters = 0;  // book chapters pooled in this row
};

struct PlannedGrant {
    std::string grant_id;
    std::string funder_name;
    std::string funder_country;
    int start_year = 0;
    std::optional<Money> amount;
    std::string currency;
    /// Indices into the funded-researcher slots; a negative slot names a
    /// researcher outside the network.
    std::vector<int> slots;
};

struct FunderInfo {
    std::string canonical_name;
    std::vector<std::string> aliases;
    std::string country;
};

struct SynthSpec {
    std::uint64_t seed = 42;
    std::vector<Archetype> archetypes;
    int career_total_min = 30;
    int career_total_max = 90;
    std::size_t coauthors_min = 5;  // per included paper, besides the hub
    std::size_t coauthors_max = 9;
    std::map<int, std::size_t> papers_per_year;
    std::vector<JournalRow> journals;
    std::string chapter_book_title = "Natural Products in Neurodegenerative Disease";

    std::size_t retraction_notices = 2;
    std::size_t doc_type_decoys = 12;
    std::size_t reviewer_only_decoys = 4;
    std::vector<std::size_t> oversized_author_counts = {161, 63};

    std::size_t anonymous_authors = 29;
    std::size_t merged_pairs = 7;
    std::size_t countries = 40;
    std::size_t organizations = 232;
    std::size_t multi_country_authors = 6;

    std::string network_name = "Pharmakon Neuroscience Research Network";
    std::string network_city = "Dhaka";
    std::string network_country_code = "BD";
    std::string network_statement =
        "The authors concede the support by the Pharmakon Neuroscience Research Network, Dhaka, Bangladesh.";
    std::size_t network_statement_count = 100;
    std::size_t registered_funder_statements = 12;

    std::size_t funded_researchers = 30;
    std::vector<PlannedGrant> grants;
    std::vector<FunderInfo> funders;
    funding::RatesTable rates;

    /// Throws InvalidSpec.
    void validate() const;
    [[nodiscard]] std::size_t network_size() const;
    [[nodiscard]] std::size_t included_count() const;
};

/// Four archetypes of 202/68/24/18 authors, the 57-row journal plan, 20
/// screening decoys and the 30-researcher grant plan.
SynthSpec default_spec();

/// Applies "key = value" overrides. Array values arrive as several strings.
/// Throws InvalidSpec on an unknown key or a malformed value.
void apply_overrides(SynthSpec& spec, const std::map<std::string, std::vector<std::string>>& overrides);

struct TruthRow {
    std::string profile_id;
    int archetype = 0;  // 1-based
    std::string archetype_name;
};

struct DecoyRow {
    std::string publication_id;
    screening::Classification expected = screening::Classification::Included;
};

struct SynthOutput {
    std::vector<PublicationRecord> records;  // included papers and decoys, shuffled
    std::vector<GrantRecord> grants;
    std::vector<trust::RegistryEntry> registry;
    identity::MergeMap merges;
    std::vector<identity::CareerEntry> careers;
    std::vector<TruthRow> truth;  // sorted by profile_id
    std::vector<DecoyRow> decoys;
    funding::RatesTable rates;
    std::size_t source_id_count = 0;
};

SynthOutput generate_corpus(const SynthSpec& spec);

/// Writes corpus.csv, grants.csv, registry.csv, merges.csv, careers.csv,
/// truth.csv, decoys.csv and rates.csv into `dir` (created if missing).
void write_output(const SynthOutput& out, const std::string& dir);

}  // namespace papertrail::synth
