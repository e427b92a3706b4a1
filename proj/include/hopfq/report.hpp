#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hopfq {

/// Ordered key/value report rendered as aligned text or JSON. Contains no
/// timings or addresses, so identical inputs give identical bytes.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add(std::string key, std::string value) { items_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, long long value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }

  const std::vector<std::pair<std::string, std::string>>& items() const { return items_; }

  std::string text() const {
    std::size_t width = 0;
    for (const auto& [k, _] : items_) width = std::max(width, k.size());
    std::ostringstream os;
    for (const auto& [k, v] : items_) os << k << std::string(width - k.size(), ' ') << " : " << v << "\n";
    return os.str();
  }

  std::string json() const {
    nlohmann::ordered_json doc;
    doc["command"] = command_;
    auto& body = doc["report"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : items_) body[k] = v;
    return doc.dump(2) + "\n";
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace hopfq
