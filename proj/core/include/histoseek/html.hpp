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

#ifndef HISTOSEEK_HTML_HPP_
#define HISTOSEEK_HTML_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "histoseek/url.hpp"

namespace histoseek {

// Tolerant HTML scanning. None of these functions fail: malformed markup is
// handled the way browsers mostly do (stray '<' is text, unterminated tags
// and comments run to the end of input).

// Visible text: script and style bodies and comments removed, tags
// stripped (block-level tags act as word breaks), character references
// decoded and whitespace collapsed.
std::string extract_text(std::string_view html);

// Absolute http(s) targets of <a href> and <area href>, resolved against
// the document's <base href> if present, otherwise `base`. Fragments are
// stripped; duplicates are removed keeping first-seen order.
std::vector<std::string> extract_links(std::string_view html, const Url& base);

// Absolute http(s) URLs of <img src>, resolved and deduplicated like
// extract_links.
std::vector<std::string> extract_image_refs(std::string_view html,
                                            const Url& base);

// Decodes named and numeric character references.
std::string decode_entities(std::string_view text);

}  // namespace histoseek

#endif  // HISTOSEEK_HTML_HPP_
