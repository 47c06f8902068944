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

#ifndef HISTOSEEK_ONTOLOGY_HPP_
#define HISTOSEEK_ONTOLOGY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace histoseek {

// One row of a domain's weight table together with its syntable entry.
struct OntologyTerm {
  std::string term;
  double weight = 0.0;
  std::vector<std::string> synonyms;
};

// A named domain: weighted ontology terms, their synonyms and the cut-off
// a page's relevance must strictly exceed to count as in-domain.
//
// Construction validates every invariant and throws ProfileError:
//   * weights lie in [0, 1], relevance_limit is finite and >= 0;
//   * terms and synonyms are nonempty canonical phrases (lowercase words
//     separated by single spaces, exactly as tokenize() would produce);
//   * canonical terms are unique, no synonym repeats a term or another
//     synonym anywhere in the profile.
class DomainProfile {
 public:
  DomainProfile(std::string name, double relevance_limit,
                std::vector<OntologyTerm> terms);

  const std::string& name() const noexcept { return name_; }
  double relevance_limit() const noexcept { return relevance_limit_; }
  const std::vector<OntologyTerm>& terms() const noexcept { return terms_; }

  // Null when `term` is not a canonical term of this profile.
  const OntologyTerm* find_term(std::string_view term) const;

  // Index into terms() of the term owning `phrase` (canonical or synonym),
  // or -1.
  int phrase_owner(std::string_view phrase) const;

  // Word count of the longest term or synonym.
  std::size_t max_phrase_words() const noexcept { return max_phrase_words_; }

 private:
  std::string name_;
  double relevance_limit_;
  std::vector<OntologyTerm> terms_;
  std::unordered_map<std::string, int> phrase_index_;
  std::size_t max_phrase_words_ = 0;
};

// Occurrences per canonical term.
using TermCounts = std::map<std::string, std::uint64_t, std::less<>>;

struct TermScore {
  std::uint64_t count = 0;
  double contribution = 0.0;
};

struct RelevanceScore {
  double value = 0.0;
  std::map<std::string, TermScore, std::less<>> per_term;
};

// Parses a profile document:
//   {"name": "...", "relevance_limit": 4.0,
//    "terms": [{"term": "match", "weight": 0.1,
//               "synonyms": ["competition", "contest"]}, ...]}
// "synonyms" may be omitted. Throws ProfileError.
DomainProfile load_domain_profile(std::string_view document);
DomainProfile load_domain_profile_file(const std::filesystem::path& path);

// Counts whole-phrase occurrences of every canonical term in `text`,
// crediting synonym hits to their canonical term. Tokens are consumed
// left to right with the longest matching phrase winning at each
// position, so overlapping phrases are never double counted. Every term
// of the profile appears in the result, possibly with count 0.
TermCounts count_term_occurrences(std::string_view text,
                                  const DomainProfile& profile);

// Sum of count x weight over the counted terms. Throws InvalidArgument when
// a key is not a canonical term of `profile`.
RelevanceScore page_relevance(const TermCounts& counts,
                              const DomainProfile& profile);

// score.value > relevance_limit (strict).
bool is_domain_relevant(const RelevanceScore& score,
                        const DomainProfile& profile);

// Profiles keyed by name.
class ProfileSet {
 public:
  ProfileSet() = default;

  // Loads every *.json file in `dir`. Throws ProfileError on any bad file
  // or on two profiles sharing a name.
  static ProfileSet load_directory(const std::filesystem::path& dir);

  void add(DomainProfile profile);
  const DomainProfile* find(std::string_view name) const;
  std::vector<std::string> names() const;
  bool empty() const noexcept { return profiles_.empty(); }

 private:
  std::map<std::string, DomainProfile, std::less<>> profiles_;
};

}  // namespace histoseek

#endif  // HISTOSEEK_ONTOLOGY_HPP_
