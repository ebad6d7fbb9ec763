#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testsupport {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

papertrail::AuthorMention author(const std::string& name, const std::string& id, const std::string& country) {
    papertrail::AuthorMention m;
    m.raw_name = name;
    if (!id.empty()) m.source_researcher_id = id;
    m.affiliation_texts = {"Example University, Dhaka, Bangladesh"};
    m.countries = {country};
    return m;
}

papertrail::PublicationRecord article(const std::string& id, std::vector<papertrail::AuthorMention> authors,
                                      std::int64_t cited, int year) {
    papertrail::PublicationRecord r;
    r.publication_id = id;
    r.title = "Paper " + id;
    r.publisher = "Elsevier";
    r.source_title = "Life Sciences";
    r.pub_year = year;
    r.document_type = papertrail::DocumentType::ResearchArticle;
    r.authors = std::move(authors);
    r.times_cited = cited;
    return r;
}

papertrail::PublicationRecord paper_with(const std::string& id, const std::vector<std::string>& author_ids,
                                         std::int64_t cited, int year) {
    std::vector<papertrail::AuthorMention> authors;
    for (const auto& a : author_ids) authors.push_back(author("Author " + a, a));
    return article(id, std::move(authors), cited, year);
}

}  // namespace testsupport
