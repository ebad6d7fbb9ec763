#pragma once

#include <string>
#include <vector>

#include "papertrail/corpus.hpp"

namespace testsupport {

inline std::string data_path(const std::string& rel) { return std::string(PAPERTRAIL_TEST_DATA) + "/" + rel; }
inline std::string golden_path(const std::string& rel) { return std::string(PAPERTRAIL_TEST_GOLDEN) + "/" + rel; }

std::string read_file(const std::string& path);

papertrail::AuthorMention author(const std::string& name, const std::string& id = "",
                                 const std::string& country = "BD");

/// A valid research article with the given authors (by source ID) and citations.
papertrail::PublicationRecord article(const std::string& id, std::vector<papertrail::AuthorMention> authors,
                                      std::int64_t cited = 0, int year = 2020);

/// Authors named "Author <id>" with that source ID.
papertrail::PublicationRecord paper_with(const std::string& id, const std::vector<std::string>& author_ids,
                                         std::int64_t cited = 0, int year = 2020);

}  // namespace testsupport
