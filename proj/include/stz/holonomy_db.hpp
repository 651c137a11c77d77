#pragma once

// Parser for the flat-holonomy database: a JSON document listing the
// holonomy groups of closed flat manifolds in dimensions <= 5, each with a
// GroupSpec build recipe and a literature source.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace stz {

struct DbEntry {
  std::string name;       // short identifier, e.g. "r4_D8"
  int dim = 0;            // manifold dimension the group occurs in
  std::string spec_text;  // GroupSpec in structured-text form
  std::string source;     // literature citation
  std::string note;       // optional free-form remark
};

struct HolonomyDb {
  std::string comment;
  std::vector<DbEntry> entries;
};

inline HolonomyDb parse_holonomy_db(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("holonomy db: malformed JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array())
    throw std::invalid_argument("holonomy db: expected {comment, entries:[]}");

  HolonomyDb db;
  db.comment = doc.value("comment", "");
  for (const auto& item : doc["entries"]) {
    DbEntry e;
    e.name = item.at("name").get<std::string>();
    e.dim = item.at("dim").get<int>();
    e.spec_text = item.at("spec").get<std::string>();
    e.source = item.at("source").get<std::string>();
    e.note = item.value("note", "");
    if (e.name.empty())
      throw std::invalid_argument("holonomy db: entry with empty name");
    if (e.dim < 1 || e.dim > 5)
      throw std::invalid_argument("holonomy db: dimension out of range for " +
                                  e.name);
    if (e.spec_text.empty())
      throw std::invalid_argument("holonomy db: entry without spec: " + e.name);
    db.entries.push_back(std::move(e));
  }
  return db;
}

}  // namespace stz
