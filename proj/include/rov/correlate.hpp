#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rov/net.hpp"

namespace rov {

enum class Similarity { High, Medium, Low };

inline const char* to_string(Similarity s) {
  switch (s) {
    case Similarity::High: return "high";
    case Similarity::Medium: return "medium";
    default: return "low";
  }
}

struct OutOfRangeCategory : std::runtime_error {
  OutOfRangeCategory(int cp, int dp)
      : std::runtime_error("category tuple (" + std::to_string(cp) + "," +
                           std::to_string(dp) + ") out of range") {}
};

// Tuple = (control-plane category 1..4, data-plane category 1..7).
using CategoryTuple = std::pair<int, int>;

inline const std::set<CategoryTuple>& high_similarity_tuples() {
  static const std::set<CategoryTuple> h = {
      {1, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5},
      {3, 6}, {3, 7}, {4, 5}, {4, 6}, {4, 7}};
  return h;
}

inline const std::set<CategoryTuple>& medium_similarity_tuples() {
  static const std::set<CategoryTuple> m = {
      {1, 3}, {2, 6}, {2, 7}, {3, 3}, {3, 4}, {3, 5}, {4, 3}, {4, 4}};
  return m;
}

inline const std::set<CategoryTuple>& low_similarity_tuples() {
  static const std::set<CategoryTuple> l = {
      {1, 4}, {1, 5}, {1, 6}, {1, 7}, {2, 1},
      {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
  return l;
}

// The three sets must partition the full 4x7 tuple space; a transcription
// error here would otherwise silently misscore ASes.
inline void check_similarity_partition() {
  const auto& h = high_similarity_tuples();
  const auto& m = medium_similarity_tuples();
  const auto& l = low_similarity_tuples();
  if (h.size() + m.size() + l.size() != 28)
    throw std::logic_error("similarity sets do not cover 28 tuples");
  for (int cp = 1; cp <= 4; ++cp)
    for (int dp = 1; dp <= 7; ++dp) {
      int hits = static_cast<int>(h.count({cp, dp})) +
                 static_cast<int>(m.count({cp, dp})) +
                 static_cast<int>(l.count({cp, dp}));
      if (hits != 1)
        throw std::logic_error("tuple (" + std::to_string(cp) + "," +
                               std::to_string(dp) + ") appears " +
                               std::to_string(hits) + " times");
    }
}

inline Similarity similarity(int control_category, int data_category) {
  if (control_category < 1 || control_category > 4 || data_category < 1 ||
      data_category > 7)
    throw OutOfRangeCategory(control_category, data_category);
  CategoryTuple t{control_category, data_category};
  if (high_similarity_tuples().count(t)) return Similarity::High;
  if (medium_similarity_tuples().count(t)) return Similarity::Medium;
  return Similarity::Low;
}

struct SimilarityVerdict {
  Asn asn = 0;
  int control_category = 0;
  int data_category = 0;
  Similarity level = Similarity::Low;
};

struct CorrelationSummary {
  std::vector<SimilarityVerdict> verdicts;  // sorted by ASN
  int high = 0;
  int medium = 0;
  int low = 0;
  int only_control = 0;
  int only_data = 0;
};

inline CorrelationSummary intersect_and_score(
    const std::map<Asn, int>& control_categories,
    const std::map<Asn, int>& data_categories) {
  check_similarity_partition();
  CorrelationSummary s;
  for (const auto& [asn, cp] : control_categories) {
    auto it = data_categories.find(asn);
    if (it == data_categories.end()) {
      ++s.only_control;
      continue;
    }
    SimilarityVerdict v;
    v.asn = asn;
    v.control_category = cp;
    v.data_category = it->second;
    v.level = similarity(cp, it->second);
    switch (v.level) {
      case Similarity::High: ++s.high; break;
      case Similarity::Medium: ++s.medium; break;
      case Similarity::Low: ++s.low; break;
    }
    s.verdicts.push_back(v);
  }
  for (const auto& [asn, dp] : data_categories)
    if (!control_categories.count(asn)) ++s.only_data;
  return s;
}

}  // namespace rov
