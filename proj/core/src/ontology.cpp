// Copyright 2026 The HistoSeek Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "histoseek/ontology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "histoseek/error.hpp"
#include "histoseek/text.hpp"
#include "json.hpp"

namespace histoseek {
namespace {

std::size_t word_count(std::string_view phrase) {
  return static_cast<std::size_t>(
             std::count(phrase.begin(), phrase.end(), ' ')) +
         1;
}

void require_canonical(const std::string& phrase, const std::string& what) {
  if (phrase.empty()) throw ProfileError(what + " is empty");
  if (normalize_phrase(phrase) != phrase) {
    throw ProfileError(what + " \"" + phrase +
                       "\" is not lowercase words separated by single spaces");
  }
}

}  // namespace

DomainProfile::DomainProfile(std::string name, double relevance_limit,
                             std::vector<OntologyTerm> terms)
    : name_(std::move(name)),
      relevance_limit_(relevance_limit),
      terms_(std::move(terms)) {
  if (name_.empty()) throw ProfileError("profile name is empty");
  for (const char c : name_) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) throw ProfileError("profile name \"" + name_ + "\" is not an identifier");
  }
  if (!std::isfinite(relevance_limit_) || relevance_limit_ < 0.0) {
    throw ProfileError("relevance_limit must be a finite value >= 0");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const OntologyTerm& t = terms_[i];
    require_canonical(t.term, "term");
    if (!(t.weight >= 0.0 && t.weight <= 1.0)) {
      throw ProfileError("weight of \"" + t.term + "\" is outside [0, 1]");
    }
    if (!phrase_index_.emplace(t.term, static_cast<int>(i)).second) {
      throw ProfileError("duplicate term \"" + t.term + "\"");
    }
    max_phrase_words_ = std::max(max_phrase_words_, word_count(t.term));
  }
  // Synonyms are indexed after all terms so a synonym colliding with a
  // later canonical term is caught too.
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (const auto& syn : terms_[i].synonyms) {
      require_canonical(syn, "synonym of \"" + terms_[i].term + "\"");
      if (!phrase_index_.emplace(syn, static_cast<int>(i)).second) {
        throw ProfileError("synonym \"" + syn + "\" of \"" + terms_[i].term +
                           "\" duplicates another term or synonym");
      }
      max_phrase_words_ = std::max(max_phrase_words_, word_count(syn));
    }
  }
}

const OntologyTerm* DomainProfile::find_term(std::string_view term) const {
  const int owner = phrase_owner(term);
  if (owner < 0 || terms_[static_cast<std::size_t>(owner)].term != term) {
    return nullptr;
  }
  return &terms_[static_cast<std::size_t>(owner)];
}

int DomainProfile::phrase_owner(std::string_view phrase) const {
  const auto it = phrase_index_.find(std::string(phrase));
  return it == phrase_index_.end() ? -1 : it->second;
}

DomainProfile load_domain_profile(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ProfileError(std::string("malformed profile document: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ProfileError("profile document is not an object");
    const auto name = doc.at("name").get<std::string>();
    const auto& limit = doc.at("relevance_limit");
    if (!limit.is_number()) throw ProfileError("relevance_limit is not a number");
    const auto& terms_doc = doc.at("terms");
    if (!terms_doc.is_array()) throw ProfileError("terms is not an array");

    std::vector<OntologyTerm> terms;
    terms.reserve(terms_doc.size());
    for (const auto& item : terms_doc) {
      OntologyTerm term;
      term.term = item.at("term").get<std::string>();
      const auto& weight = item.at("weight");
      if (!weight.is_number()) {
        throw ProfileError("weight of \"" + term.term + "\" is not a number");
      }
      term.weight = weight.get<double>();
      if (item.contains("synonyms")) {
        term.synonyms = item.at("synonyms").get<std::vector<std::string>>();
      }
      terms.push_back(std::move(term));
    }
    return DomainProfile(name, limit.get<double>(), std::move(terms));
  } catch (const json::exception& e) {
    throw ProfileError(std::string("malformed profile document: ") + e.what());
  }
}

DomainProfile load_domain_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProfileError("cannot read profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_domain_profile(buf.str());
  } catch (const ProfileError& e) {
    throw ProfileError(path.string() + ": " + e.what());
  }
}

TermCounts count_term_occurrences(std::string_view text,
                                  const DomainProfile& profile) {
  TermCounts counts;
  for (const auto& t : profile.terms()) counts.emplace(t.term, 0);
  if (profile.terms().empty()) return counts;

  const std::vector<std::string> tokens = tokenize(text);
  const std::size_t longest = profile.max_phrase_words();
  std::string phrase;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    std::size_t matched = 0;
    const std::size_t max_len = std::min(longest, tokens.size() - pos);
    for (std::size_t len = max_len; len >= 1; --len) {
      phrase.clear();
      for (std::size_t k = 0; k < len; ++k) {
        if (k > 0) phrase.push_back(' ');
        phrase += tokens[pos + k];
      }
      const int owner = profile.phrase_owner(phrase);
      if (owner >= 0) {
        ++counts[profile.terms()[static_cast<std::size_t>(owner)].term];
        matched = len;
        break;
      }
    }
    pos += matched > 0 ? matched : 1;
  }
  return counts;
}

RelevanceScore page_relevance(const TermCounts& counts,
                              const DomainProfile& profile) {
  RelevanceScore score;
  for (const auto& [term, count] : counts) {
    const OntologyTerm* t = profile.find_term(term);
    if (t == nullptr) {
      throw InvalidArgument("counts", "term \"" + term +
                                          "\" is not part of profile \"" +
                                          profile.name() + "\"");
    }
    const double contribution = static_cast<double>(count) * t->weight;
    score.per_term.emplace(term, TermScore{count, contribution});
    score.value += contribution;
  }
  return score;
}

bool is_domain_relevant(const RelevanceScore& score,
                        const DomainProfile& profile) {
  return score.value > profile.relevance_limit();
}

ProfileSet ProfileSet::load_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw ProfileError("profiles directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  ProfileSet set;
  for (const auto& file : files) set.add(load_domain_profile_file(file));
  return set;
}

void ProfileSet::add(DomainProfile profile) {
  std::string key = profile.name();
  if (!profiles_.emplace(key, std::move(profile)).second) {
    throw ProfileError("duplicate profile name \"" + key + "\"");
  }
}

const DomainProfile* ProfileSet::find(std::string_view name) const {
  const auto it = profiles_.find(name);
  return it == profiles_.end() ? nullptr : &it->second;
}

std::vector<std::string> ProfileSet::names() const {
  std::vector<std::string> out;
  out.reserve(profiles_.size());
  for (const auto& [name, profile] : profiles_) out.push_back(name);
  return out;
}

}  // namespace histoseek
