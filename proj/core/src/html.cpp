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

#include "histoseek/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <optional>
#include <unordered_set>
#include <utility>

#include "histoseek/text.hpp"

namespace histoseek {
namespace {

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  std::vector<std::pair<std::string, std::string>> attrs;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct NamedEntity {
  std::string_view name;
  char32_t codepoint;
};

// Sorted by name for binary search.
constexpr std::array<NamedEntity, 58> kEntities = {{
    {"AElig", 0xC6}, {"Aacute", 0xC1}, {"Eacute", 0xC9}, {"Ntilde", 0xD1},
    {"Ouml", 0xD6},  {"Uuml", 0xDC},   {"aacute", 0xE1}, {"acirc", 0xE2},
    {"aelig", 0xE6}, {"agrave", 0xE0}, {"amp", '&'},     {"apos", '\''},
    {"aring", 0xE5}, {"auml", 0xE4},   {"bull", 0x2022}, {"ccedil", 0xE7},
    {"cent", 0xA2},  {"copy", 0xA9},   {"deg", 0xB0},    {"eacute", 0xE9},
    {"ecirc", 0xEA}, {"egrave", 0xE8}, {"euml", 0xEB},   {"euro", 0x20AC},
    {"gt", '>'},     {"hellip", 0x2026}, {"iacute", 0xED}, {"iuml", 0xEF},
    {"laquo", 0xAB}, {"ldquo", 0x201C}, {"lsquo", 0x2018}, {"lt", '<'},
    {"mdash", 0x2014}, {"middot", 0xB7}, {"nbsp", 0xA0}, {"ndash", 0x2013},
    {"ntilde", 0xF1}, {"oacute", 0xF3}, {"ocirc", 0xF4}, {"ouml", 0xF6},
    {"para", 0xB6},  {"pound", 0xA3},  {"quot", '"'},    {"raquo", 0xBB},
    {"rdquo", 0x201D}, {"reg", 0xAE},  {"rsquo", 0x2019}, {"sect", 0xA7},
    {"shy", 0xAD},   {"szlig", 0xDF},  {"times", 0xD7},  {"trade", 0x2122},
    {"uacute", 0xFA}, {"ucirc", 0xFB}, {"uuml", 0xFC},   {"yen", 0xA5},
    {"yuml", 0xFF},  {"zwnj", 0x200C},
}};

static_assert(std::is_sorted(kEntities.begin(), kEntities.end(),
                             [](const NamedEntity& a, const NamedEntity& b) {
                               return a.name < b.name;
                             }));

std::optional<char32_t> lookup_entity(std::string_view name) {
  const auto it = std::lower_bound(
      kEntities.begin(), kEntities.end(), name,
      [](const NamedEntity& e, std::string_view n) { return e.name < n; });
  if (it != kEntities.end() && it->name == name) return it->codepoint;
  return std::nullopt;
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool iequals_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (pos + word.size() > s.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != word[i]) return false;
  }
  return true;
}

const std::unordered_set<std::string_view>& block_tags() {
  static const std::unordered_set<std::string_view> tags = {
      "address", "article", "aside", "blockquote", "body", "br", "caption",
      "dd", "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer",
      "form", "h1", "h2", "h3", "h4", "h5", "h6", "head", "header", "hr",
      "html", "li", "main", "nav", "ol", "option", "p", "pre", "section",
      "table", "tbody", "td", "tfoot", "th", "thead", "title", "tr", "ul"};
  return tags;
}

// Walks `html`, reporting text runs (raw, entities still encoded) and tags.
// Script and style bodies are skipped entirely.
void scan(std::string_view html,
          const std::function<void(std::string_view)>& on_text,
          const std::function<void(const Tag&)>& on_tag) {
  std::size_t pos = 0;
  std::size_t text_start = 0;
  auto flush_text = [&](std::size_t end) {
    if (end > text_start) on_text(html.substr(text_start, end - text_start));
  };

  while (pos < html.size()) {
    if (html[pos] != '<') {
      ++pos;
      continue;
    }
    const std::size_t lt = pos;
    if (html.compare(pos, 4, "<!--") == 0) {
      flush_text(lt);
      const auto end = html.find("-->", pos + 4);
      pos = end == std::string_view::npos ? html.size() : end + 3;
      text_start = pos;
      continue;
    }
    if (pos + 1 < html.size() && (html[pos + 1] == '!' || html[pos + 1] == '?')) {
      flush_text(lt);
      const std::string_view terminator =
          html.compare(pos, 9, "<![CDATA[") == 0 ? "]]>" : ">";
      const auto end = html.find(terminator, pos + 2);
      pos = end == std::string_view::npos ? html.size() : end + terminator.size();
      text_start = pos;
      continue;
    }

    Tag tag;
    std::size_t p = pos + 1;
    if (p < html.size() && html[p] == '/') {
      tag.closing = true;
      ++p;
    }
    if (p >= html.size() || !is_alpha(html[p])) {
      ++pos;  // literal '<'
      continue;
    }
    flush_text(lt);
    while (p < html.size() && !is_space(html[p]) && html[p] != '>' && html[p] != '/') {
      tag.name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[p]))));
      ++p;
    }
    // Attributes.
    while (p < html.size() && html[p] != '>') {
      if (is_space(html[p]) || html[p] == '/') {
        ++p;
        continue;
      }
      std::string key;
      while (p < html.size() && !is_space(html[p]) && html[p] != '>' &&
             html[p] != '=' && html[p] != '/') {
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(html[p]))));
        ++p;
      }
      while (p < html.size() && is_space(html[p])) ++p;
      std::string value;
      if (p < html.size() && html[p] == '=') {
        ++p;
        while (p < html.size() && is_space(html[p])) ++p;
        if (p < html.size() && (html[p] == '"' || html[p] == '\'')) {
          const char quote = html[p++];
          const auto end = html.find(quote, p);
          const std::size_t stop = end == std::string_view::npos ? html.size() : end;
          value = decode_entities(html.substr(p, stop - p));
          p = stop == html.size() ? stop : stop + 1;
        } else {
          const std::size_t start = p;
          while (p < html.size() && !is_space(html[p]) && html[p] != '>') ++p;
          value = decode_entities(html.substr(start, p - start));
        }
      }
      if (!key.empty()) tag.attrs.emplace_back(std::move(key), std::move(value));
    }
    pos = p < html.size() ? p + 1 : p;
    text_start = pos;
    on_tag(tag);

    if (!tag.closing && (tag.name == "script" || tag.name == "style")) {
      std::size_t search = pos;
      std::size_t end = html.size();
      while (search < html.size()) {
        const auto candidate = html.find("</", search);
        if (candidate == std::string_view::npos) break;
        if (iequals_at(html, candidate + 2, tag.name)) {
          end = candidate;
          break;
        }
        search = candidate + 2;
      }
      pos = end;
      text_start = pos;
    }
  }
  flush_text(html.size());
}

std::string clean_url_attribute(std::string_view raw) {
  std::string out;
  for (const char c : raw) {
    if (c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  }
  const auto first = out.find_first_not_of(" \f");
  if (first == std::string::npos) return {};
  const auto last = out.find_last_not_of(" \f");
  return out.substr(first, last - first + 1);
}

// Collects attribute `attr` of tags in `tag_names`, resolved to absolute
// http(s) URLs without fragments.
std::vector<std::string> collect_urls(std::string_view html, const Url& base,
                                      std::initializer_list<std::string_view> tag_names,
                                      std::string_view attr) {
  std::optional<Url> doc_base;
  std::vector<std::string> raw;
  scan(
      html, [](std::string_view) {},
      [&](const Tag& tag) {
        if (tag.closing) return;
        if (tag.name == "base" && !doc_base) {
          if (const auto* href = tag.attr("href")) {
            doc_base = base.resolve(clean_url_attribute(*href));
          }
          return;
        }
        if (std::find(tag_names.begin(), tag_names.end(), tag.name) == tag_names.end()) {
          return;
        }
        if (const auto* value = tag.attr(attr)) raw.push_back(clean_url_attribute(*value));
      });

  const Url& effective = doc_base ? *doc_base : base;
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& ref : raw) {
    if (ref.empty()) continue;
    const auto resolved = effective.resolve(ref);
    if (!resolved || !resolved->is_http() || resolved->host().empty()) continue;
    std::string url = resolved->without_fragment().str();
    if (seen.insert(url).second) out.push_back(std::move(url));
  }
  return out;
}

}  // namespace

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c != '&') {
      out.push_back(c);
      ++pos;
      continue;
    }
    std::size_t p = pos + 1;
    if (p < text.size() && text[p] == '#') {
      ++p;
      const bool hex = p < text.size() && (text[p] == 'x' || text[p] == 'X');
      if (hex) ++p;
      const std::size_t digits_start = p;
      std::uint32_t value = 0;
      while (p < text.size() &&
             (hex ? std::isxdigit(static_cast<unsigned char>(text[p]))
                  : std::isdigit(static_cast<unsigned char>(text[p])))) {
        const char d = text[p];
        const std::uint32_t digit =
            std::isdigit(static_cast<unsigned char>(d))
                ? static_cast<std::uint32_t>(d - '0')
                : static_cast<std::uint32_t>(std::tolower(d) - 'a' + 10);
        value = std::min<std::uint32_t>(value * (hex ? 16 : 10) + digit, 0x110000);
        ++p;
      }
      if (p == digits_start) {
        out.push_back('&');
        ++pos;
        continue;
      }
      if (p < text.size() && text[p] == ';') ++p;
      append_utf8(out, value == 0 ? 0xFFFD : value);
      pos = p;
      continue;
    }
    std::size_t end = p;
    while (end < text.size() && std::isalnum(static_cast<unsigned char>(text[end])) &&
           end - p < 16) {
      ++end;
    }
    const std::string_view name = text.substr(p, end - p);
    const bool terminated = end < text.size() && text[end] == ';';
    const auto cp = lookup_entity(name);
    const bool legacy = name == "amp" || name == "lt" || name == "gt" ||
                        name == "quot" || name == "nbsp";
    if (cp && (terminated || legacy)) {
      append_utf8(out, *cp);
      pos = terminated ? end + 1 : end;
    } else {
      out.push_back('&');
      ++pos;
    }
  }
  return out;
}

std::string extract_text(std::string_view html) {
  std::string text;
  scan(
      html,
      [&](std::string_view raw) { text += decode_entities(raw); },
      [&](const Tag& tag) {
        if (block_tags().count(tag.name) != 0) text.push_back(' ');
      });
  // No-break spaces separate words like ordinary spaces.
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) == 0xC2 && i + 1 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0xA0) {
      normalized.push_back(' ');
      ++i;
    } else {
      normalized.push_back(text[i]);
    }
  }
  return collapse_whitespace(normalized);
}

std::vector<std::string> extract_links(std::string_view html, const Url& base) {
  return collect_urls(html, base, {"a", "area"}, "href");
}

std::vector<std::string> extract_image_refs(std::string_view html, const Url& base) {
  return collect_urls(html, base, {"img"}, "src");
}

}  // namespace histoseek
