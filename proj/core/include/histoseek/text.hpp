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

#ifndef HISTOSEEK_TEXT_HPP_
#define HISTOSEEK_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace histoseek {

// Splits UTF-8 text into lowercase word tokens. Letters and digits are word
// characters; everything else (punctuation, symbols, whitespace, invalid
// UTF-8) separates tokens.
//
// Letter classification and case folding cover Latin (including Latin-1
// and Extended-A), Greek and Cyrillic exactly; other scripts are treated
// as word characters outside the known punctuation and symbol blocks.
std::vector<std::string> tokenize(std::string_view text);

// Tokens joined by single spaces: the canonical form of a phrase.
std::string normalize_phrase(std::string_view text);

// Appends the UTF-8 encoding of `codepoint` (U+FFFD if out of range).
void append_utf8(std::string& out, char32_t codepoint);

// Collapses runs of ASCII whitespace to one space and trims both ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace histoseek

#endif  // HISTOSEEK_TEXT_HPP_
