#include "papertrail/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "papertrail/csv.hpp"
#include "papertrail/error.hpp"
#include "papertrail/selection.hpp"
#include "papertrail/text.hpp"

namespace papertrail::synth {

namespace {

struct Country {
    const char* code;
    const char* name;
    const char* city;
    int weight;
};

// Author locations; the first entry hosts the network.
constexpr Country kCountries[] = {
    {"BD", "Bangladesh", "Dhaka", 90},        {"IN", "India", "New Delhi", 40},
    {"SA", "Saudi Arabia", "Riyadh", 22},     {"EG", "Egypt", "Cairo", 18},
    {"PK", "Pakistan", "Lahore", 14},         {"CN", "China", "Beijing", 12},
    {"MY", "Malaysia", "Kuala Lumpur", 8},    {"RO", "Romania", "Bucharest", 8},
    {"IT", "Italy", "Rome", 7},               {"US", "United States", "Boston", 7},
    {"KR", "South Korea", "Seoul", 6},        {"AE", "United Arab Emirates", "Abu Dhabi", 5},
    {"JO", "Jordan", "Amman", 5},             {"IQ", "Iraq", "Baghdad", 4},
    {"IR", "Iran", "Tehran", 4},              {"TR", "Turkey", "Ankara", 4},
    {"NG", "Nigeria", "Lagos", 4},            {"MX", "Mexico", "Mexico City", 3},
    {"BR", "Brazil", "Sao Paulo", 3},         {"PL", "Poland", "Warsaw", 3},
    {"FR", "France", "Paris", 3},             {"HR", "Croatia", "Zagreb", 3},
    {"PT", "Portugal", "Lisbon", 3},          {"RU", "Russia", "Moscow", 3},
    {"AU", "Australia", "Sydney", 3},         {"IE", "Ireland", "Dublin", 2},
    {"CA", "Canada", "Toronto", 2},           {"JP", "Japan", "Tokyo", 2},
    {"DE", "Germany", "Berlin", 2},           {"GB", "United Kingdom", "London", 2},
    {"ES", "Spain", "Madrid", 2},             {"GR", "Greece", "Athens", 2},
    {"TH", "Thailand", "Bangkok", 2},         {"VN", "Vietnam", "Hanoi", 2},
    {"ID", "Indonesia", "Jakarta", 2},        {"NP", "Nepal", "Kathmandu", 2},
    {"LK", "Sri Lanka", "Colombo", 2},        {"ZA", "South Africa", "Cape Town", 2},
    {"CL", "Chile", "Santiago", 1},           {"KE", "Kenya", "Nairobi", 1},
};
constexpr std::size_t kCountryCount = sizeof(kCountries) / sizeof(kCountries[0]);

constexpr const char* kFirstNames[] = {
    "Abdul",  "Aisha",   "Alexandru", "Amina",   "Ana",     "Anand",    "Andrea",  "Arif",    "Bianca",  "Carlos",
    "Chen",   "Daniela", "David",     "Elena",   "Fahad",   "Farhana",  "Fatima",  "Gabriel", "Hana",    "Hassan",
    "Ibrahim", "Ioana",  "Jamal",     "Javier",  "Jiho",    "José",     "Karim",   "Laila",   "Li",      "Lucía",
    "Mahmud", "Maria",   "Marta",     "Mehmet",  "Mihai",   "Mohammad", "Nadia",   "Nasrin",  "Nikhil",  "Noor",
    "Omar",   "Paolo",   "Priya",     "Rafiq",   "Rana",    "Ravi",     "Rehana",  "Sadia",   "Salma",   "Sara",
    "Shahid", "Sofia",   "Sunil",     "Tahmina", "Tanvir",  "Wei",      "Yasmin",  "Yusuf",   "Zainab",  "Zoltán",
};

constexpr const char* kSurnames[] = {
    "Abdullah", "Ahmed",    "Akter",     "Alam",     "Ali",       "Amin",      "Anwar",     "Ashraf",    "Aziz",
    "Bakr",     "Banerjee", "Begum",     "Bhatt",    "Bose",      "Chowdhury", "Costa",     "Das",       "Dey",
    "Dumitru",  "Farooq",   "Ferreira",  "Gao",      "Ghosh",     "Gupta",     "Habib",     "Haque",     "Hasan",
    "Hossain",  "Huang",    "Hussain",   "Iqbal",    "Islam",     "Jahan",     "Jain",      "Kabir",     "Kamal",
    "Karim",    "Khalil",   "Khan",      "Khatun",   "Kim",       "Kumar",     "Lee",       "Li",        "Liu",
    "Mahmud",   "Malik",    "Mandal",    "Marin",    "Mehta",     "Miah",      "Mishra",    "Mitra",     "Molla",
    "Moreno",   "Mostafa",  "Munteanu",  "Nair",     "Nasser",    "Nguyen",    "Noor",      "Omar",      "Park",
    "Patel",    "Popescu",  "Qureshi",   "Rahim",    "Rahman",    "Rao",       "Rashid",    "Reddy",     "Ricci",
    "Rossi",    "Roy",      "Saha",      "Saleh",    "Sarker",    "Sen",       "Shah",      "Sharma",    "Sheikh",
    "Siddique", "Silva",    "Singh",     "Sultana",  "Talukder",  "Uddin",     "Verma",     "Wang",      "Yadav",
    "Yilmaz",   "Younis",   "Zaman",     "Zhang",    "Zhao",      "Zhou",      "Stoica",    "Ionescu",   "Georgescu",
    "Constantin", "Rusu",   "Matei",     "Barbu",    "Nistor",    "Moldovan",  "Pereira",   "Santos",    "Oliveira",
    "Gómez",    "Muñoz",    "Schäfer",   "Özdemir",  "Demir",     "Çelik",     "Aydın",     "Kaya",      "Şahin",
    "Tan",      "Lim",      "Wong",      "Chua",     "Ismail",    "Osman",     "Yusof",     "Hamid",     "Latif",
};

constexpr const char* kOrgWords[] = {
    "Northern", "Southern", "Eastern", "Western", "Central", "National", "City",    "Metropolitan", "Royal",
    "Green",    "Riverside", "Lakeside", "Crescent", "Frontier", "Heritage", "Liberty", "Unity",       "Pioneer",
    "Summit",   "Horizon",  "Meridian", "Coastal", "Valley",  "Highland", "Capital", "Premier",      "Global",
};

constexpr const char* kAcademicKinds[] = {
    "University", "Medical College", "Institute of Pharmaceutical Sciences", "College of Pharmacy",
    "University of Science and Technology", "Research Institute", "Medical University", "Institute of Neuroscience",
};
constexpr const char* kCompanyKinds[] = {"Pharmaceuticals Ltd", "Biotech Ltd", "Diagnostics", "Life Sciences Ltd"};
constexpr const char* kNonAcademicKinds[] = {"General Hospital", "Health Foundation", "Medical Centre"};

constexpr const char* kTitleLeads[] = {
    "Neuroprotective effects of", "Therapeutic potential of", "Emerging roles of", "Molecular mechanisms of",
    "Pharmacological insights into", "Recent advances in", "Targeting", "Anti-inflammatory activity of",
};
constexpr const char* kTitleAgents[] = {
    "flavonoids", "curcumin", "resveratrol", "marine alkaloids", "nanoparticle carriers", "quercetin",
    "phytochemicals", "autophagy modulators", "microRNAs", "polyphenols", "berberine", "gut microbiota",
};
constexpr const char* kTitleTargets[] = {
    "Alzheimer's disease", "Parkinson's disease", "ischemic stroke", "neuroinflammation", "oxidative stress",
    "diabetic neuropathy", "glioblastoma", "depression", "epilepsy", "COVID-19 neurological sequelae",
};
constexpr const char* kFields[] = {
    "3214 Pharmacology and Pharmaceutical Sciences", "3209 Neurosciences", "3101 Biochemistry and Cell Biology",
    "3202 Clinical Sciences", "3404 Medicinal and Biomolecular Chemistry",
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(temporal::replicate_engine(seed, 0)) {}

    std::uint64_t next() { return engine_(); }
    double unit() { return temporal::uniform01(engine_); }

    /// Uniform in [0, n) without modulo bias.
    std::size_t below(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    template <class T, std::size_t N>
    const T& pick(const T (&arr)[N]) {
        return arr[below(N)];
    }

    std::size_t weighted(const std::vector<double>& w) {
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        double u = unit() * total;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (u < w[i]) return i;
            u -= w[i];
        }
        return w.size() - 1;
    }

    std::string digits(std::size_t n) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('0' + below(10));
        return s;
    }

private:
    std::mt19937_64 engine_;
};

struct Org {
    std::string name;
    std::size_t country = 0;
    OrgType type = OrgType::TeachingInstitution;
    std::optional<std::string> registry_id;
};

struct Person {
    std::string first;
    std::string last;
    int archetype = -1;  // -1 outside the network
    bool anonymous = false;
    bool merged = false;
    std::string id_a;
    std::string id_b;
    std::optional<std::string> orcid;
    std::size_t country = 0;
    std::size_t org = 0;
    std::optional<std::size_t> second_org;
    std::vector<std::string> emails;
    std::vector<std::string> emails_b;
    bool network_affiliation = false;
    bool both_emails_once = false;

    [[nodiscard]] std::string full_name() const { return first + " " + last; }
};

struct Generator {
    const SynthSpec& spec;
    Rng rng;
    std::vector<Org> orgs;
    std::vector<Person> people;
    std::set<std::string> name_keys;
    std::set<std::string> used_ids;
    std::set<std::string> org_names;
    std::size_t hub = 0;

    explicit Generator(const SynthSpec& s) : spec(s), rng(s.seed) {}

    std::string unique_id(const std::string& prefix, std::size_t digits, const std::string& suffix_digits = "") {
        for (;;) {
            std::string id = prefix + rng.digits(digits);
            if (!suffix_digits.empty()) id += "." + rng.digits(suffix_digits.size());
            if (used_ids.insert(id).second) return id;
        }
    }

    std::string registry_id() { return unique_id("grid.", 6, "0"); }

    void make_name(Person& p) {
        for (;;) {
            p.first = rng.pick(kFirstNames);
            p.last = rng.pick(kSurnames);
            if (name_keys.insert(identity::name_key(p.full_name())).second) return;
        }
    }

    std::string affiliation(std::size_t org) const {
        const auto& o = orgs[org];
        const auto& c = kCountries[o.country];
        return o.name + ", " + c.city + ", " + c.name;
    }

    std::string network_affiliation() const {
        return spec.network_name + ", " + spec.network_city + ", " + kCountries[0].name;
    }

    AuthorMention mention(const Person& p, bool variant_b, bool all_emails) const {
        AuthorMention m;
        m.raw_name = variant_b ? p.first.substr(0, 1) + ". " + p.last : p.full_name();
        if (variant_b && static_cast<unsigned char>(p.first[0]) >= 0x80) m.raw_name = p.full_name();
        if (!p.anonymous) m.source_researcher_id = variant_b ? p.id_b : p.id_a;
        m.orcid = p.orcid;
        const auto& emails = variant_b && !p.emails_b.empty() ? p.emails_b : p.emails;
        if (all_emails) {
            m.emails = emails;
        } else if (!emails.empty()) {
            m.emails = {emails.front()};
        }
        m.affiliation_texts.push_back(affiliation(p.org));
        m.countries.push_back(kCountries[orgs[p.org].country].code);
        if (orgs[p.org].registry_id) m.org_registry_ids.push_back(*orgs[p.org].registry_id);
        if (p.network_affiliation) m.affiliation_texts.push_back(network_affiliation());
        if (p.second_org) {
            const auto& o2 = orgs[*p.second_org];
            m.affiliation_texts.push_back(affiliation(*p.second_org));
            const std::string code = kCountries[o2.country].code;
            if (std::find(m.countries.begin(), m.countries.end(), code) == m.countries.end()) m.countries.push_back(code);
            if (o2.registry_id) m.org_registry_ids.push_back(*o2.registry_id);
        }
        return m;
    }

    std::string profile_id(const Person& p) const {
        if (p.anonymous) return identity::synthetic_researcher_id(mention(p, false, false));
        return p.id_a;
    }

    // ------------------------------------------------------------------
    void build_people() {
        const std::size_t n = spec.network_size();
        std::vector<int> labels;
        for (std::size_t a = 0; a < spec.archetypes.size(); ++a) {
            labels.insert(labels.end(), spec.archetypes[a].authors, static_cast<int>(a));
        }
        rng.shuffle(labels);
        people.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            people[i].archetype = labels[i];
            make_name(people[i]);
        }
        // hub: the first member of the largest archetype with a During share
        hub = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] == labels[0]) {
                hub = i;
                break;
            }
        }

        // countries: every country gets one author, the rest follow the weights
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        order.erase(std::find(order.begin(), order.end(), hub));
        rng.shuffle(order);
        std::vector<double> weights;
        for (std::size_t c = 0; c < spec.countries; ++c) weights.push_back(kCountries[c].weight);
        people[hub].country = 0;
        for (std::size_t k = 0; k < order.size(); ++k) {
            people[order[k]].country = k + 1 < spec.countries ? k + 1 : rng.weighted(weights);
        }

        build_orgs();

        // identifiers
        std::vector<std::size_t> candidates = order;  // non-hub, shuffled
        std::size_t cursor = 0;
        for (std::size_t k = 0; k < spec.anonymous_authors; ++k) people[candidates[cursor++]].anonymous = true;
        for (std::size_t k = 0; k < spec.merged_pairs; ++k) people[candidates[cursor++]].merged = true;
        const std::size_t pre_post = candidates[cursor++];
        for (auto& p : people) {
            if (!p.anonymous) p.id_a = unique_id("ur.0", 10, "00");
            if (p.merged) p.id_b = unique_id("ur.0", 10, "00");
            if (!p.anonymous && rng.unit() < 0.5) {
                p.orcid = "0000-000" + rng.digits(1) + "-" + rng.digits(4) + "-" + rng.digits(4);
            }
        }
        // emails
        std::size_t merged_seen = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto& p = people[i];
            const std::string local = text::slug(p.first) + "." + text::slug(p.last);
            if (i == pre_post) {
                p.emails = {"pre-post@hotmail.com", "pre_post@hotmail.com"};
                p.both_emails_once = true;
                continue;
            }
            if (p.merged && merged_seen++ == 0) {
                // one pair is linked by dash/underscore variants of the same address
                p.emails = {text::slug(p.first) + "-" + text::slug(p.last) + "@gmail.com"};
                p.emails_b = {text::slug(p.first) + "_" + text::slug(p.last) + "@gmail.com"};
                continue;
            }
            const double u = rng.unit();
            if (u < 0.65) {
                p.emails = {local + "@o" + std::to_string(p.org + 1) + ".example.edu"};
            } else if (u < 0.85) {
                p.emails = {local + "@gmail.com"};
            } else {
                p.emails = {local + "@hotmail.com"};
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i != hub && rng.unit() < 0.08) people[i].network_affiliation = true;
        }
        people[hub].network_affiliation = true;
        people[hub].anonymous = false;
    }

    void build_orgs() {
        const std::size_t n = people.size();
        std::vector<std::size_t> per_country(spec.countries, 0);
        for (const auto& p : people) ++per_country[p.country];
        // orgs per country proportional to authors, at least one, never more than authors
        std::vector<std::size_t> alloc(spec.countries, 0);
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t assigned = 0;
        for (std::size_t c = 0; c < spec.countries; ++c) {
            if (per_country[c] == 0) continue;
            const double exact = static_cast<double>(per_country[c]) * static_cast<double>(spec.organizations) /
                                 static_cast<double>(n);
            alloc[c] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(exact)));
            alloc[c] = std::min(alloc[c], per_country[c]);
            assigned += alloc[c];
            remainders.push_back({exact - std::floor(exact), c});
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t pass = 0; assigned < spec.organizations && pass < 64; ++pass) {
            for (const auto& [r, c] : remainders) {
                if (assigned >= spec.organizations) break;
                if (alloc[c] < per_country[c]) {
                    ++alloc[c];
                    ++assigned;
                }
            }
        }
        while (assigned > spec.organizations) {
            for (auto it = remainders.rbegin(); it != remainders.rend() && assigned > spec.organizations; ++it) {
                if (alloc[it->second] > 1) {
                    --alloc[it->second];
                    --assigned;
                }
            }
        }

        std::vector<std::vector<std::size_t>> orgs_of(spec.countries);
        for (std::size_t c = 0; c < spec.countries; ++c) {
            for (std::size_t k = 0; k < alloc[c]; ++k) {
                Org o;
                o.country = c;
                const double u = rng.unit();
                const char* kind = nullptr;
                if (u < 0.60) {
                    o.type = OrgType::TeachingInstitution;
                    kind = rng.pick(kAcademicKinds);
                } else if (u < 0.78) {
                    o.type = OrgType::ResearchInstitution;
                    kind = rng.pick(kAcademicKinds);
                } else if (u < 0.90) {
                    o.type = OrgType::Company;
                    kind = rng.pick(kCompanyKinds);
                } else if (u < 0.96) {
                    o.type = OrgType::NonAcademic;
                    kind = rng.pick(kNonAcademicKinds);
                } else {
                    o.type = OrgType::Unregistered;
                    kind = rng.pick(kCompanyKinds);
                }
                for (;;) {
                    o.name = std::string(rng.pick(kOrgWords)) + " " + kCountries[c].city + " " + kind;
                    if (org_names.insert(o.name).second) break;
                }
                if (o.type != OrgType::Unregistered) o.registry_id = registry_id();
                orgs_of[c].push_back(orgs.size());
                orgs.push_back(std::move(o));
            }
        }
        // authors of a country cycle through its orgs so every org is used
        std::vector<std::size_t> next(spec.countries, 0);
        for (auto& p : people) {
            const auto& list = orgs_of[p.country];
            p.org = list[next[p.country]++ % list.size()];
        }
        // a few authors hold a second affiliation abroad
        std::vector<std::size_t> idx(people.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        rng.shuffle(idx);
        std::size_t made = 0;
        for (const auto i : idx) {
            if (made >= spec.multi_country_authors) break;
            if (i == hub) continue;
            std::size_t other = rng.below(orgs.size());
            if (orgs[other].country == people[i].country) continue;
            people[i].second_org = other;
            ++made;
        }
    }

    Person fresh_person() {
        Person p;
        make_name(p);
        p.country = 1 + rng.below(kCountryCount - 1);
        // outside researchers get their own unregistered-looking affiliation
        p.org = rng.below(orgs.size());
        p.country = orgs[p.org].country;
        p.id_a = unique_id("ur.0", 10, "00");
        p.emails = {text::slug(p.first) + "." + text::slug(p.last) + "@mail.example.org"};
        return p;
    }

    std::string title() {
        std::string t = std::string(rng.pick(kTitleLeads)) + " " + rng.pick(kTitleAgents) + " in " +
                        rng.pick(kTitleTargets);
        return t;
    }

    PublicationRecord base_record(int year) {
        PublicationRecord r;
        r.publication_id = unique_id("pub.1", 9);
        r.doi = "10.5555/" + r.publication_id.substr(4);
        r.title = title();
        r.pub_year = year;
        if (rng.unit() < 0.4) r.online_year = year;
        r.fields_of_research = {rng.pick(kFields)};
        return r;
    }
};

std::vector<std::int64_t> split_total(Rng& rng, std::int64_t total, std::size_t parts) {
    std::vector<std::int64_t> out(parts, 0);
    if (parts == 0) return out;
    std::vector<double> w(parts);
    double sum = 0.0;
    for (auto& x : w) {
        x = 0.05 + rng.unit();
        sum += x;
    }
    std::int64_t given = 0;
    std::vector<std::pair<double, std::size_t>> rem;
    for (std::size_t i = 0; i < parts; ++i) {
        const double exact = static_cast<double>(total) * w[i] / sum;
        out[i] = static_cast<std::int64_t>(std::floor(exact));
        given += out[i];
        rem.push_back({exact - std::floor(exact), i});
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; given < total; ++k, ++given) ++out[rem[k % parts].second];
    return out;
}

/// Period counts with the given total: a rounded share of the centroid plus
/// multinomial noise on the remainder.
std::array<long long, 3> draw_counts(Rng& rng, const Archetype& a, long long total) {
    std::array<long long, 3> out{0, 0, 0};
    const auto noisy = static_cast<long long>(std::llround(a.count_noise * static_cast<double>(total)));
    const long long fixed_part = total - noisy;
    long long given = 0;
    std::array<std::pair<double, std::size_t>, 3> rem{};
    for (std::size_t i = 0; i < 3; ++i) {
        const double exact = static_cast<double>(fixed_part) * a.centroid[i];
        out[i] = static_cast<long long>(std::floor(exact));
        given += out[i];
        rem[i] = {exact - std::floor(exact), i};
    }
    std::stable_sort(rem.begin(), rem.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t k = 0; given < fixed_part; ++k) {
        const auto i = rem[k % 3].second;
        if (a.centroid[i] <= 0.0) continue;
        ++out[i];
        ++given;
    }
    for (long long t = 0; t < noisy; ++t) {
        double u = rng.unit();
        std::size_t i = 0;
        for (; i < 2; ++i) {
            if (u < a.centroid[i]) break;
            u -= a.centroid[i];
        }
        while (a.centroid[i] <= 0.0) i = (i + 1) % 3;
        ++out[i];
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t SynthSpec::network_size() const {
    std::size_t n = 0;
    for (const auto& a : archetypes) n += a.authors;
    return n;
}

std::size_t SynthSpec::included_count() const {
    std::size_t n = 0;
    for (const auto& j : journals) n += j.articles + j.chapters;
    return n;
}

void SynthSpec::validate() const {
    const auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidSpec, m); };
    if (archetypes.empty()) bad("at least one archetype is required");
    for (const auto& a : archetypes) {
        if (a.authors < 1) bad("archetype '" + a.name + "' needs at least one author");
        double sum = 0.0;
        for (const double p : a.centroid) {
            if (p < 0.0) bad("archetype '" + a.name + "' has a negative share");
            sum += p;
        }
        if (std::fabs(sum - 1.0) > 1e-6) bad("archetype '" + a.name + "' shares do not sum to 1");
        if (a.centroid[1] <= 0.0) bad("archetype '" + a.name + "' needs a During share; all corpus papers fall there");
        if (a.count_noise < 0.0 || a.count_noise > 1.0) bad("count noise must lie in [0, 1]");
    }
    if (career_total_min < 1 || career_total_max < career_total_min) bad("career totals must satisfy 1 <= min <= max");
    if (coauthors_min < 1 || coauthors_max < coauthors_min) bad("co-author range must satisfy 1 <= min <= max");
    if (coauthors_max + 1 > 25) bad("included papers must stay within the 25-author screening limit");
    std::size_t planned = 0;
    for (const auto& [year, n] : papers_per_year) {
        if (year < 2019 || year > 2022) bad("included papers must fall in 2019-2022");
        planned += n;
    }
    if (planned != included_count()) {
        bad("papers per year sum to " + std::to_string(planned) + " but the journal plan has " +
            std::to_string(included_count()));
    }
    const std::size_t n = network_size();
    if (anonymous_authors + merged_pairs + 2 > n) bad("too many anonymous or merged authors for the network size");
    if (countries < 1 || countries > kCountryCount) bad("countries must lie in [1, " + std::to_string(kCountryCount) + "]");
    if (countries > n) bad("more countries than authors");
    if (organizations < countries || organizations > n) bad("organizations must lie in [countries, authors]");
    if (included_count() * coauthors_max < n - 1 + merged_pairs) bad("not enough author slots to place every author");
    if (network_statement_count + registered_funder_statements > included_count()) {
        bad("more funding statements than included papers");
    }
    for (const auto s : oversized_author_counts) {
        if (s <= 25) bad("oversized decoys need more than 25 authors");
    }
    if (funded_researchers + anonymous_authors + 1 > n) bad("not enough identified authors to fund");
    for (const auto& g : grants) {
        for (const int s : g.slots) {
            if (s >= 0 && static_cast<std::size_t>(s) >= funded_researchers) bad("grant " + g.grant_id + " names slot out of range");
        }
        if (g.amount && !rates.units_per_usd.contains(g.currency)) bad("grant " + g.grant_id + " uses a currency without a rate");
    }
    rates.validate();
}

SynthSpec default_spec() {
    SynthSpec s;
    s.archetypes = {
        {"Sustained", {0.218, 0.497, 0.285}, 202, 0.25},
        {"Network entrants", {0.0, 0.630, 0.370}, 68, 0.25},
        {"Network-exclusive", {0.0, 1.0, 0.0}, 24, 0.25},
        {"Declining", {0.431, 0.569, 0.0}, 18, 0.25},
    };
    s.papers_per_year = {{2019, 22}, {2020, 43}, {2021, 38}, {2022, 17}};
    s.journals = {
        {"Bentham Science Publishers", "CNS & Neurological Disorders - Drug Targets", 1, 52},
        {"Bentham Science Publishers", "Combinatorial Chemistry & High Throughput Screening", 1, 28},
        {"Bentham Science Publishers", "Current Drug Targets", 1, 3},
        {"Bentham Science Publishers", "Current Gene Therapy", 4, 74},
        {"Bentham Science Publishers", "Current Neuropharmacology", 4, 108},
        {"Bentham Science Publishers", "Current Pharmaceutical Design", 7, 316},
        {"Bentham Science Publishers", "Current Protein and Peptide Science", 3, 33},
        {"Bentham Science Publishers", "Current Topics in Medicinal Chemistry", 4, 119},
        {"Elsevier", "Ageing Research Reviews", 1, 139},
        {"Elsevier", "Biotechnology Advances", 1, 42},
        {"Elsevier", "Brain Research Bulletin", 1, 102},
        {"Elsevier", "Current Opinion in Environmental Science & Health", 1, 0},
        {"Elsevier", "Current Research in Pharmacology and Drug Discovery", 1, 31},
        {"Elsevier", "Current Research in Translational Medicine", 1, 38},
        {"Elsevier", "European Journal of Medicinal Chemistry", 1, 61},
        {"Elsevier", "European Journal of Pharmacology", 2, 135},
        {"Elsevier", "International Immunopharmacology", 1, 99},
        {"Elsevier", "Journal of the Neurological Sciences", 1, 67},
        {"Elsevier", "Life Sciences", 4, 234},
        {"Elsevier", "Pharmacological Research", 2, 151},
        {"Elsevier", "Phytomedicine", 2, 188},
        {"Elsevier", "Seminars in Cancer Biology", 2, 172},
        {"Elsevier", "The Science of The Total Environment", 3, 295},
        {"Elsevier", "Toxicology Reports", 2, 17},
        {"Frontiers", "Frontiers in Cell and Developmental Biology", 3, 236},
        {"Frontiers", "Frontiers in Neuroscience", 1, 39},
        {"Frontiers", "Frontiers in Pharmacology", 5, 153},
        {"Frontiers", "Frontiers in Physiology", 1, 15},
        {"Hindawi", "Advances in Public Health", 1, 3},
        {"Hindawi", "Evidence-based Complementary and Alternative Medicine", 3, 50},
        {"Hindawi", "Journal of Nanomaterials", 1, 20},
        {"Hindawi", "Mediators of Inflammation", 1, 8},
        {"Hindawi", "Oxidative Medicine and Cellular Longevity", 2, 100},
        {"IMR Press", "Frontiers in Bioscience-Landmark", 1, 2},
        {"MDPI", "International Journal of Molecular Sciences", 4, 491},
        {"MDPI", "Marine Drugs", 2, 124},
        {"MDPI", "Molecules", 2, 712},
        {"MDPI", "Pharmaceuticals", 1, 99},
        {"MDPI", "Pharmacy", 1, 28},
        {"Oxford University Press (OUP)", "Journal of Pharmacy and Pharmacology", 2, 179},
        {"Royal Society of Chemistry (RSC)", "Natural Product Reports", 1, 13},
        {"Springer Nature", "", 0, 54, 3},
        {"Springer Nature", "Community Mental Health Journal", 1, 0},
        {"Springer Nature", "Environmental Science and Pollution Research", 8, 409},
        {"Springer Nature", "Inflammation Research", 1, 11},
        {"Springer Nature", "Molecular Biology Reports", 1, 11},
        {"Springer Nature", "Molecular Neurobiology", 8, 685},
        {"Springer Nature", "Neurochemical Research", 2, 48},
        {"Springer Nature", "Neurotoxicity Research", 2, 108},
        {"Springer Nature", "Pharmacological Reports", 1, 40},
        {"Taylor & Francis", "Critical Reviews in Food Science and Nutrition", 1, 107},
        {"Taylor & Francis", "Journal of Biomolecular Structure and Dynamics", 1, 11},
        {"Wiley", "Archiv der Pharmazie", 1, 120},
        {"Wiley", "BioMed Research International", 3, 373},
        {"Wiley", "IUBMB Life", 1, 57},
        {"Wiley", "Oxidative Medicine and Cellular Longevity", 2, 89},
        {"Wolters Kluwer", "Neural Regeneration Research", 1, 143},
    };

    s.funders = {
        {"National Natural Science Foundation of China", {"NSFC", "Natural Science Foundation of China"}, "CN"},
        {"Agence Nationale de la Recherche", {"ANR", "French National Research Agency"}, "FR"},
        {"Croatian Science Foundation", {"HRZZ", "Hrvatska zaklada za znanost"}, "HR"},
        {"Science Foundation Ireland", {"SFI"}, "IE"},
        {"Sapienza University of Rome", {"Sapienza Università di Roma"}, "IT"},
        {"Fundação para a Ciência e a Tecnologia", {"FCT", "Portuguese Foundation for Science and Technology"}, "PT"},
        {"Russian Science Foundation", {"RSF"}, "RU"},
        {"National Institutes of Health", {"NIH"}, "US"},
        {"Japan Society for the Promotion of Science", {"JSPS"}, "JP"},
        {"Deutsche Forschungsgemeinschaft", {"DFG", "German Research Foundation"}, "DE"},
        {"Natural Sciences and Engineering Research Council of Canada", {"NSERC"}, "CA"},
        {"Australian Research Council", {"ARC"}, "AU"},
        {"National Research Foundation of Korea", {"NRF"}, "KR"},
    };

    s.rates.as_of = "2025-12-31";
    s.rates.units_per_usd = {{"USD", 1.0},  {"EUR", 0.92}, {"CNY", 7.10}, {"RUB", 90.0},  {"JPY", 140.0},
                             {"CAD", 1.35}, {"AUD", 1.50}, {"KRW", 1300.0}, {"GBP", 0.79}};

    const auto m = [](const char* v) { return Money::parse(v); };
    const std::string nsfc = "National Natural Science Foundation of China";
    const std::string anr = "Agence Nationale de la Recherche";
    const std::string hrzz = "Croatian Science Foundation";
    const std::string sfi = "Science Foundation Ireland";
    const std::string sap = "Sapienza University of Rome";
    const std::string fct = "Fundação para a Ciência e a Tecnologia";
    const std::string rsf = "Russian Science Foundation";
    const std::string nih = "National Institutes of Health";
    const std::string jsps = "Japan Society for the Promotion of Science";
    const std::string dfg = "Deutsche Forschungsgemeinschaft";
    const std::string nserc = "Natural Sciences and Engineering Research Council of Canada";
    const std::string arc = "Australian Research Council";
    const std::string nrf = "National Research Foundation of Korea";
    s.grants = {
        // first funding during or after network participation
        {"G-NSFC-0201", nsfc, "CN", 2021, m("580000"), "CNY", {0}},
        {"G-NSFC-0202", nsfc, "CN", 2023, m("300000"), "CNY", {1}},
        {"G-ANR-0203", anr, "FR", 2022, m("600000"), "EUR", {2}},
        {"G-HRZZ-0204", hrzz, "HR", 2020, m("150000"), "EUR", {3}},
        {"G-SFI-0205", sfi, "IE", 2021, m("1500000"), "EUR", {4}},
        {"G-SAP-0206", sap, "IT", 2023, m("40000"), "EUR", {5}},
        {"G-FCT-0207", fct, "PT", 2019, m("240000"), "EUR", {6}},
        {"G-FCT-0208", fct, "PT", 2024, m("60000"), "EUR", {7}},
        {"G-RSF-0209", rsf, "RU", 2022, m("18000000"), "RUB", {8}},
        // funded before the network
        {"G-NIH-1001", nih, "US", 2016, m("8400000"), "USD", {9}},
        {"G-NIH-1002", nih, "US", 2017, m("6250000"), "USD", {10}},
        {"G-JSPS-1003", jsps, "JP", 2015, m("450000000"), "JPY", {11}},
        {"G-DFG-1004", dfg, "DE", 2016, m("2800000"), "EUR", {12}},
        {"G-NSERC-1005", nserc, "CA", 2018, m("1900000"), "CAD", {13}},
        {"G-ARC-1006", arc, "AU", 2017, m("3600000"), "AUD", {14}},
        {"G-NRF-1007", nrf, "KR", 2016, m("2600000000"), "KRW", {15}},
        {"G-NIH-1008", nih, "US", 2014, m("11800000"), "USD", {16}},
        {"G-NIH-1009", nih, "US", 2018, m("9500000"), "USD", {17}},
        {"G-DFG-1010", dfg, "DE", 2015, m("4100000"), "EUR", {18}},
        {"G-JSPS-1011", jsps, "JP", 2018, m("380000000"), "JPY", {19}},
        {"G-ARC-1012", arc, "AU", 2016, m("2100000"), "AUD", {20}},
        {"G-NSERC-1013", nserc, "CA", 2017, m("2700000"), "CAD", {21}},
        {"G-NIH-1014", nih, "US", 2015, m("14200000"), "USD", {22}},
        {"G-NRF-1015", nrf, "KR", 2018, std::nullopt, "KRW", {23}},
        {"G-NIH-1016", nih, "US", 2013, m("7300000"), "USD", {24}},
        {"G-DFG-1017", dfg, "DE", 2017, m("3300000"), "EUR", {25}},
        {"G-JSPS-1018", jsps, "JP", 2016, m("520000000"), "JPY", {26}},
        {"G-NIH-1019", nih, "US", 2016, m("5900000"), "USD", {27}},
        {"G-ARC-1020", arc, "AU", 2018, m("1500000"), "AUD", {28}},
        {"G-NSERC-1021", nserc, "CA", 2015, m("1200000"), "CAD", {29}},
        {"G-NIH-1022", nih, "US", 2017, m("9200000"), "USD", {9, 16, 22, 27}},
        {"G-NIH-1023", nih, "US", 2021, m("3200000"), "USD", {9}},
        {"G-DFG-1024", dfg, "DE", 2023, m("1800000"), "EUR", {18}},
        {"G-NIH-1025", nih, "US", 2020, m("4500000"), "USD", {22}},
        {"G-NIH-1026", nih, "US", 2024, m("2000000"), "USD", {16}},
        // not linked to the network
        {"G-NIH-9001", nih, "US", 2020, m("1250000"), "USD", {-1}},
    };
    return s;
}

namespace {

std::size_t to_size(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size() || x < 0) throw std::invalid_argument(v);
        return static_cast<std::size_t>(x);
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, key + ": '" + v + "' is not a non-negative integer");
    }
}

double to_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidSpec, key + ": '" + v + "' is not a number");
    }
}

}  // namespace

void apply_overrides(SynthSpec& spec, const std::map<std::string, std::vector<std::string>>& overrides) {
    const auto one = [](const std::string& key, const std::vector<std::string>& v) -> const std::string& {
        if (v.size() != 1) throw Error(ErrorCode::InvalidSpec, key + " takes a single value");
        return v.front();
    };
    const auto per_archetype = [&](const std::string& key, const std::vector<std::string>& v) {
        if (v.size() != spec.archetypes.size()) {
            if (v.size() > spec.archetypes.size()) {
                spec.archetypes.resize(v.size(), Archetype{"Archetype", {0.0, 1.0, 0.0}, 1, 0.25});
                for (std::size_t i = 0; i < spec.archetypes.size(); ++i) {
                    if (spec.archetypes[i].name == "Archetype") spec.archetypes[i].name = "Archetype " + std::to_string(i + 1);
                }
            } else {
                throw Error(ErrorCode::InvalidSpec, key + " needs one value per archetype");
            }
        }
    };
    for (const auto& [key, v] : overrides) {
        if (key == "seed") {
            spec.seed = to_size(key, one(key, v));
        } else if (key == "archetype_sizes") {
            per_archetype(key, v);
            for (std::size_t i = 0; i < v.size(); ++i) spec.archetypes[i].authors = to_size(key, v[i]);
        } else if (key == "archetype_before" || key == "archetype_during" || key == "archetype_after") {
            per_archetype(key, v);
            const std::size_t part = key == "archetype_before" ? 0 : key == "archetype_during" ? 1 : 2;
            for (std::size_t i = 0; i < v.size(); ++i) spec.archetypes[i].centroid[part] = to_real(key, v[i]);
        } else if (key == "archetype_noise") {
            per_archetype(key, v);
            for (std::size_t i = 0; i < v.size(); ++i) spec.archetypes[i].count_noise = to_real(key, v[i]);
        } else if (key == "archetype_names") {
            per_archetype(key, v);
            for (std::size_t i = 0; i < v.size(); ++i) spec.archetypes[i].name = v[i];
        } else if (key == "career_total_min") {
            spec.career_total_min = static_cast<int>(to_size(key, one(key, v)));
        } else if (key == "career_total_max") {
            spec.career_total_max = static_cast<int>(to_size(key, one(key, v)));
        } else if (key == "coauthors_min") {
            spec.coauthors_min = to_size(key, one(key, v));
        } else if (key == "coauthors_max") {
            spec.coauthors_max = to_size(key, one(key, v));
        } else if (key == "retraction_notices") {
            spec.retraction_notices = to_size(key, one(key, v));
        } else if (key == "doc_type_decoys") {
            spec.doc_type_decoys = to_size(key, one(key, v));
        } else if (key == "reviewer_only_decoys") {
            spec.reviewer_only_decoys = to_size(key, one(key, v));
        } else if (key == "oversized_author_counts") {
            spec.oversized_author_counts.clear();
            for (const auto& x : v) {
                if (!x.empty()) spec.oversized_author_counts.push_back(to_size(key, x));
            }
        } else if (key == "anonymous_authors") {
            spec.anonymous_authors = to_size(key, one(key, v));
        } else if (key == "merged_pairs") {
            spec.merged_pairs = to_size(key, one(key, v));
        } else if (key == "countries") {
            spec.countries = to_size(key, one(key, v));
        } else if (key == "organizations") {
            spec.organizations = to_size(key, one(key, v));
        } else if (key == "multi_country_authors") {
            spec.multi_country_authors = to_size(key, one(key, v));
        } else if (key == "network_statement") {
            spec.network_statement = one(key, v);
        } else if (key == "network_statement_count") {
            spec.network_statement_count = to_size(key, one(key, v));
        } else if (key == "registered_funder_statements") {
            spec.registered_funder_statements = to_size(key, one(key, v));
        } else {
            throw Error(ErrorCode::InvalidSpec, "unknown spec key '" + key + "'");
        }
    }
}

SynthOutput generate_corpus(const SynthSpec& spec) {
    spec.validate();
    Generator g(spec);
    auto& rng = g.rng;
    g.build_people();
    const std::size_t n = g.people.size();
    auto& people = g.people;

    // -- included papers: journal plan, years, author lists
    struct Planned {
        const JournalRow* row;
        bool chapter;
        std::int64_t cited;
    };
    std::vector<Planned> plan;
    for (const auto& row : spec.journals) {
        const auto cites = split_total(rng, row.citations, row.articles + row.chapters);
        for (std::size_t i = 0; i < row.articles + row.chapters; ++i) plan.push_back({&row, i >= row.articles, cites[i]});
    }
    std::vector<int> years;
    for (const auto& [y, k] : spec.papers_per_year) years.insert(years.end(), k, y);
    rng.shuffle(years);

    const std::size_t papers = plan.size();
    std::vector<std::size_t> capacity(papers);
    for (auto& c : capacity) c = spec.coauthors_min + rng.below(spec.coauthors_max - spec.coauthors_min + 1);

    // every non-hub author appears once; merged authors once per identifier
    struct Slot {
        std::size_t person;
        bool variant_b;
    };
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == g.hub) continue;
        slots.push_back({i, false});
        if (people[i].merged) slots.push_back({i, true});
    }
    rng.shuffle(slots);
    std::size_t room = std::accumulate(capacity.begin(), capacity.end(), std::size_t{0});
    while (room < slots.size()) {
        const auto p = rng.below(papers);
        if (capacity[p] < spec.coauthors_max) {
            ++capacity[p];
            ++room;
        }
    }
    std::vector<std::vector<Slot>> authors(papers);
    const auto on_paper = [&](std::size_t p, std::size_t person) {
        return std::any_of(authors[p].begin(), authors[p].end(), [&](const Slot& s) { return s.person == person; });
    };
    std::size_t cursor = 0;
    for (const auto& s : slots) {
        for (std::size_t tries = 0; tries < papers; ++tries) {
            const std::size_t p = (cursor + tries) % papers;
            if (authors[p].size() < capacity[p] && !on_paper(p, s.person)) {
                authors[p].push_back(s);
                cursor = p + 1;
                break;
            }
        }
    }
    for (std::size_t p = 0; p < papers; ++p) {
        while (authors[p].size() < capacity[p]) {
            const std::size_t person = rng.below(n);
            if (person == g.hub || on_paper(p, person)) continue;
            authors[p].push_back({person, people[person].merged && rng.unit() < 0.5});
        }
    }

    std::vector<std::size_t> statement_kind(papers, 0);  // 0 none, 1 network, 2 registered funder
    {
        std::vector<std::size_t> idx(papers);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        rng.shuffle(idx);
        for (std::size_t k = 0; k < spec.network_statement_count; ++k) statement_kind[idx[k]] = 1;
        for (std::size_t k = 0; k < spec.registered_funder_statements; ++k) {
            statement_kind[idx[spec.network_statement_count + k]] = 2;
        }
    }
    // funders that read cleanly in a sentence
    const std::vector<std::size_t> statement_funders = {0, 7, 8, 9, 10, 11};

    std::vector<PublicationRecord> records;
    std::vector<std::size_t> corpus_count(n, 0);
    bool pre_post_shown = false;
    for (std::size_t p = 0; p < papers; ++p) {
        const auto& pl = plan[p];
        auto r = g.base_record(years[p]);
        r.publisher = pl.row->publisher;
        if (pl.chapter) {
            r.document_type = DocumentType::ResearchChapter;
            r.source_title = spec.chapter_book_title;
        } else {
            r.document_type = rng.unit() < 0.7 ? DocumentType::ResearchArticle : DocumentType::ReviewArticle;
            r.source_title = pl.row->source_title;
        }
        r.times_cited = pl.cited;
        auto list = authors[p];
        list.insert(list.begin() + static_cast<std::ptrdiff_t>(rng.below(list.size() + 1)), Slot{g.hub, false});
        for (const auto& s : list) {
            const auto& person = people[s.person];
            const bool both = person.both_emails_once && !pre_post_shown;
            if (both) pre_post_shown = true;
            r.authors.push_back(g.mention(person, s.variant_b, both));
            ++corpus_count[s.person];
        }
        r.corresponding_author_ids = {people[g.hub].id_a};
        if (statement_kind[p] == 1) {
            r.funding_statement = spec.network_statement;
            r.funders.push_back({spec.network_name, std::nullopt, spec.network_country_code});
        } else if (statement_kind[p] == 2) {
            const auto& f = spec.funders[statement_funders[rng.below(statement_funders.size())] % spec.funders.size()];
            r.funding_statement = "This work was supported by the " + f.canonical_name + ".";
            r.funders.push_back({f.canonical_name, std::nullopt, f.country});
        }
        records.push_back(std::move(r));
    }

    // -- decoys
    std::vector<DecoyRow> decoys;
    const auto network_authors = [&](PublicationRecord& r, std::size_t extra) {
        r.authors.push_back(g.mention(people[g.hub], false, false));
        std::set<std::size_t> chosen;
        while (chosen.size() < extra) {
            const auto person = rng.below(n);
            if (person != g.hub) chosen.insert(person);
        }
        for (const auto person : chosen) r.authors.push_back(g.mention(people[person], false, false));
    };
    const auto decoy_year = [&] { return rng.between(2019, 2023); };
    for (std::size_t k = 0; k < spec.retraction_notices; ++k) {
        auto r = g.base_record(decoy_year());
        r.title = "Retraction Note: " + r.title;
        r.document_type = DocumentType::RetractionNotice;
        r.publisher = "Springer Nature";
        r.source_title = "Molecular Neurobiology";
        network_authors(r, 2);
        decoys.push_back({r.publication_id, screening::Classification::RetractionNotice});
        records.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < spec.doc_type_decoys; ++k) {
        auto r = g.base_record(decoy_year());
        r.title = (k % 2 == 0 ? "Correction to: " : "Comment on: ") + r.title;
        r.document_type = DocumentType::Other;
        r.publisher = "Elsevier";
        r.source_title = "Life Sciences";
        network_authors(r, 1 + rng.below(3));
        decoys.push_back({r.publication_id, screening::Classification::DocTypeExcluded});
        records.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < spec.reviewer_only_decoys; ++k) {
        auto r = g.base_record(decoy_year());
        r.document_type = DocumentType::ResearchArticle;
        r.publisher = "Frontiers";
        r.source_title = "Frontiers in Pharmacology";
        const std::size_t count = 2 + rng.below(4);
        for (std::size_t a = 0; a < count; ++a) r.authors.push_back(g.mention(g.fresh_person(), false, false));
        r.reviewer_affiliations = g.network_affiliation();
        r.times_cited = static_cast<std::int64_t>(rng.below(40));
        decoys.push_back({r.publication_id, screening::Classification::ReviewerOnly});
        records.push_back(std::move(r));
    }
    for (const auto size : spec.oversized_author_counts) {
        auto r = g.base_record(decoy_year());
        r.document_type = DocumentType::ResearchArticle;
        r.publisher = "Elsevier";
        r.source_title = "The Lancet Neurology";
        r.title = "Global burden of neurological disorders: a multi-country collaborative analysis";
        r.authors.push_back(g.mention(people[g.hub], false, false));
        for (std::size_t a = 1; a < size; ++a) r.authors.push_back(g.mention(g.fresh_person(), false, false));
        r.times_cited = static_cast<std::int64_t>(100 + rng.below(900));
        decoys.push_back({r.publication_id, screening::Classification::TooManyAuthors});
        records.push_back(std::move(r));
    }
    rng.shuffle(records);

    SynthOutput out;
    out.records = std::move(records);
    out.decoys = std::move(decoys);
    std::sort(out.decoys.begin(), out.decoys.end(),
              [](const DecoyRow& a, const DecoyRow& b) { return a.publication_id < b.publication_id; });
    out.rates = spec.rates;

    // -- identity artifacts
    out.merges.provenance = identity::MergeProvenance::Curated;
    for (const auto& p : people) {
        out.source_id_count += p.merged ? 2 : 1;
        if (!p.merged) continue;
        identity::MergeEntry e;
        e.source_ids = {p.id_a, p.id_b};
        std::sort(e.source_ids.begin(), e.source_ids.end());
        e.profile_key = p.id_a;
        e.canonical_name = p.full_name();
        out.merges.entries.push_back(std::move(e));
    }
    std::sort(out.merges.entries.begin(), out.merges.entries.end(),
              [](const auto& a, const auto& b) { return a.profile_key < b.profile_key; });

    // -- careers: period totals around the archetype centroid, minus corpus papers
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = spec.archetypes[static_cast<std::size_t>(people[i].archetype)];
        const auto c = static_cast<long long>(corpus_count[i]);
        long long total = rng.between(spec.career_total_min, spec.career_total_max);
        const auto floor_total = static_cast<long long>(std::ceil(static_cast<double>(c) / a.centroid[1] * 1.1));
        total = std::max(total, floor_total);
        auto counts = draw_counts(rng, a, total);
        while (counts[1] < c) {
            total += 5;
            counts = draw_counts(rng, a, total);
        }
        counts[1] -= c;
        std::map<int, long long> by_year;
        for (long long k = 0; k < counts[0]; ++k) ++by_year[rng.between(2013, 2018)];
        for (long long k = 0; k < counts[1]; ++k) ++by_year[rng.between(2019, 2022)];
        for (long long k = 0; k < counts[2]; ++k) ++by_year[rng.between(2023, 2025)];
        const std::string pid = g.profile_id(people[i]);
        for (const auto& [y, k] : by_year) out.careers.push_back({pid, y, k});
        out.truth.push_back({pid, people[i].archetype + 1, a.name});
    }
    std::stable_sort(out.careers.begin(), out.careers.end(), [](const auto& a, const auto& b) {
        return a.profile_id != b.profile_id ? a.profile_id < b.profile_id : a.year < b.year;
    });
    std::sort(out.truth.begin(), out.truth.end(),
              [](const TruthRow& a, const TruthRow& b) { return a.profile_id < b.profile_id; });

    // -- grants
    std::vector<std::size_t> fundable;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != g.hub && !people[i].anonymous) fundable.push_back(i);
    }
    rng.shuffle(fundable);
    for (const auto& pg : spec.grants) {
        GrantRecord gr;
        gr.grant_id = pg.grant_id;
        gr.funder_name = pg.funder_name;
        gr.funder_country = pg.funder_country;
        gr.start_year = pg.start_year;
        gr.amount = pg.amount;
        gr.currency = pg.currency;
        for (const int s : pg.slots) {
            if (s < 0) {
                gr.researcher_ids.push_back(g.fresh_person().id_a);
            } else {
                const auto& p = people[fundable[static_cast<std::size_t>(s)]];
                gr.researcher_ids.push_back(p.merged ? p.id_b : p.id_a);
            }
        }
        out.grants.push_back(std::move(gr));
    }

    // -- registry: funders then organizations; the network itself is absent
    for (const auto& f : spec.funders) {
        out.registry.push_back({g.registry_id(), f.canonical_name, f.aliases, f.country, OrgType::NonAcademic});
    }
    for (const auto& o : g.orgs) {
        if (!o.registry_id) continue;
        out.registry.push_back({*o.registry_id, o.name, {}, kCountries[o.country].code, o.type});
    }
    return out;
}

void write_output(const SynthOutput& out, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
    const auto open = [&](const char* name) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::Io, "cannot write " + (fs::path(dir) / name).string());
        return f;
    };
    {
        auto f = open("corpus.csv");
        write_corpus(f, out.records, CorpusFormat::Csv);
    }
    {
        auto f = open("grants.csv");
        write_grants(f, out.grants);
    }
    {
        auto f = open("registry.csv");
        trust::write_registry(f, out.registry);
    }
    {
        auto f = open("merges.csv");
        identity::write_merges(f, out.merges);
    }
    {
        auto f = open("careers.csv");
        identity::write_careers(f, out.careers);
    }
    {
        auto f = open("rates.csv");
        funding::write_rates(f, out.rates);
    }
    {
        auto f = open("truth.csv");
        csv::write_row(f, {"profile_id", "archetype", "archetype_name"});
        for (const auto& t : out.truth) csv::write_row(f, {t.profile_id, std::to_string(t.archetype), t.archetype_name});
    }
    {
        auto f = open("decoys.csv");
        csv::write_row(f, {"publication_id", "expected_class"});
        for (const auto& d : out.decoys) csv::write_row(f, {d.publication_id, std::string(screening::to_string(d.expected))});
    }
}

}  // namespace papertrail::synth
