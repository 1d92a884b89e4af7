// SPDX-License-Identifier: Apache-2.0
#include "migmap/javadoc_parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "migmap/errors.hpp"

namespace migmap::corpus {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t end = text.find(';', i);
    if (end == std::string_view::npos || end - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view entity = text.substr(i + 1, end - i - 1);
    if (entity == "lt") {
      out.push_back('<');
    } else if (entity == "gt") {
      out.push_back('>');
    } else if (entity == "amp") {
      out.push_back('&');
    } else if (entity == "quot") {
      out.push_back('"');
    } else if (entity == "apos") {
      out.push_back('\'');
    } else if (entity == "nbsp") {
      out.push_back(' ');
    } else if (!entity.empty() && entity[0] == '#') {
      // Numeric reference; re-encode as UTF-8.
      std::uint32_t code = 0;
      bool ok = true;
      if (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')) {
        for (char c : entity.substr(2)) {
          if (std::isxdigit(static_cast<unsigned char>(c)) == 0) { ok = false; break; }
          code = code * 16 + static_cast<std::uint32_t>(
              std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                                                          : std::tolower(c) - 'a' + 10);
        }
      } else {
        for (char c : entity.substr(1)) {
          if (std::isdigit(static_cast<unsigned char>(c)) == 0) { ok = false; break; }
          code = code * 10 + static_cast<std::uint32_t>(c - '0');
        }
      }
      if (!ok || code == 0 || code > 0x10ffff) {
        out.push_back(text[i++]);
        continue;
      }
      if (code < 0x80) {
        out.push_back(static_cast<char>(code));
      } else if (code < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (code >> 6)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
      } else if (code < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (code >> 12)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
      } else {
        out.push_back(static_cast<char>(0xf0 | (code >> 18)));
        out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3f)));
      }
    } else {
      out.push_back(text[i]);
      ++i;
      continue;
    }
    i = end + 1;
  }
  return out;
}

/// Removes tags and comments, decodes entities, collapses whitespace runs.
std::string html_to_text(std::string_view html) {
  std::string stripped;
  stripped.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] == '<') {
      if (html.compare(i, 4, "<!--") == 0) {
        std::size_t end = html.find("-->", i);
        i = (end == std::string_view::npos) ? html.size() : end + 3;
      } else {
        std::size_t end = html.find('>', i);
        i = (end == std::string_view::npos) ? html.size() : end + 1;
      }
      stripped.push_back(' ');
    } else {
      stripped.push_back(html[i++]);
    }
  }
  std::string decoded = decode_entities(stripped);
  std::string out;
  out.reserve(decoded.size());
  bool in_space = true;
  for (char c : decoded) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      if (!in_space && !out.empty()) out.push_back(' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

/// Finds the next element whose tag and attributes match, returning the inner
/// HTML. `needle` is matched inside the opening tag (e.g. `class="block"`).
std::string_view find_element(std::string_view html, std::string_view tag,
                              std::string_view needle, std::size_t* pos) {
  std::string open = "<" + std::string(tag);
  std::string close = "</" + std::string(tag);
  std::size_t from = pos != nullptr ? *pos : 0;
  while (true) {
    std::size_t start = html.find(open, from);
    if (start == std::string_view::npos) return {};
    std::size_t tag_end = html.find('>', start);
    if (tag_end == std::string_view::npos) return {};
    char after = html[start + open.size()];
    bool tag_boundary = after == ' ' || after == '>' || after == '\t' || after == '\n';
    std::string_view attrs = html.substr(start, tag_end - start);
    if (tag_boundary && (needle.empty() || attrs.find(needle) != std::string_view::npos)) {
      std::size_t body_start = tag_end + 1;
      std::size_t end = html.find(close, body_start);
      if (end == std::string_view::npos) return {};
      if (pos != nullptr) *pos = end + close.size();
      return html.substr(body_start, end - body_start);
    }
    from = tag_end;
  }
}

std::string attribute_value(std::string_view html, std::string_view element_open,
                            std::string_view attr) {
  std::size_t start = html.find(element_open);
  if (start == std::string_view::npos) return {};
  std::size_t tag_end = html.find('>', start);
  if (tag_end == std::string_view::npos) return {};
  std::string_view tag = html.substr(start, tag_end - start);
  std::string prefix = std::string(attr) + "=\"";
  std::size_t a = tag.find(prefix);
  if (a == std::string_view::npos) return {};
  std::size_t v = a + prefix.size();
  std::size_t e = tag.find('"', v);
  if (e == std::string_view::npos) return {};
  return decode_entities(tag.substr(v, e - v));
}

/// Strips package (and outer class) qualifiers: "java.lang.String" -> "String",
/// "java.util.List<java.lang.String>" -> "List<String>". Dots not followed by
/// an identifier (varargs "...") are preserved.
std::string simplify_type(std::string_view type) {
  std::string out;
  std::size_t i = 0;
  while (i < type.size()) {
    if (is_ident_char(type[i])) {
      std::size_t start = i;
      while (i < type.size() && is_ident_char(type[i])) ++i;
      if (i < type.size() && type[i] == '.' && i + 1 < type.size() && is_ident_char(type[i + 1])) {
        ++i;  // qualifier segment: drop it and its dot
        continue;
      }
      out += type.substr(start, i - start);
    } else {
      out.push_back(type[i++]);
    }
  }
  return out;
}

std::vector<std::string> split_outside_generics(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())) != 0) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())) != 0) s.remove_suffix(1);
  return std::string(s);
}

bool is_modifier(std::string_view token) {
  static const char* kModifiers[] = {"public", "protected", "private",  "static",
                                     "final",  "abstract",  "default", "native",
                                     "synchronized", "strictfp"};
  return std::any_of(std::begin(kModifiers), std::end(kModifiers),
                     [&](const char* m) { return token == m; });
}

/// Parses "public static <T> T mock(Class<T> classToMock)" into return type and
/// parameters. Returns false when the text does not look like a signature of
/// the named method.
bool parse_signature(const std::string& text, const std::string& method_name,
                     std::string* return_type, std::vector<ApiParameter>* params) {
  std::size_t name_pos = std::string::npos;
  std::size_t search = 0;
  while (true) {
    std::size_t p = text.find(method_name + "(", search);
    if (p == std::string::npos) break;
    bool starts_clean = p == 0 || !is_ident_char(text[p - 1]);
    if (starts_clean) {
      name_pos = p;
      break;
    }
    search = p + 1;
  }
  if (name_pos == std::string::npos) return false;

  std::size_t open = name_pos + method_name.size();
  std::size_t close = open;
  int depth = 0;
  for (; close < text.size(); ++close) {
    if (text[close] == '(') ++depth;
    if (text[close] == ')') {
      --depth;
      if (depth == 0) break;
    }
  }
  if (depth != 0) return false;

  // Return type: last space-separated token before the name, skipping
  // modifiers, annotations and type-parameter declarations.
  std::string before = trim(text.substr(0, name_pos));
  std::vector<std::string> head;
  for (const auto& raw : split_outside_generics(before, ' ')) {
    std::string token = trim(raw);
    if (token.empty() || token[0] == '@' || token[0] == '<' || is_modifier(token)) continue;
    head.push_back(token);
  }
  *return_type = head.empty() ? "" : simplify_type(head.back());

  params->clear();
  std::string inside = trim(text.substr(open + 1, close - open - 1));
  if (inside.empty()) return true;
  for (const auto& raw : split_outside_generics(inside, ',')) {
    std::string part = trim(raw);
    if (part.empty()) continue;
    std::vector<std::string> tokens;
    for (const auto& t : split_outside_generics(part, ' ')) {
      std::string token = trim(t);
      if (token.empty() || token[0] == '@' || token == "final") continue;
      tokens.push_back(token);
    }
    ApiParameter param;
    if (tokens.size() == 1) {
      param.type = simplify_type(tokens[0]);
    } else if (!tokens.empty()) {
      param.name = tokens.back();
      std::string type;
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (!type.empty()) type += ' ';
        type += tokens[i];
      }
      param.type = simplify_type(type);
    }
    params->push_back(std::move(param));
  }
  return true;
}

struct ClassPage {
  bool recognized = false;
  std::string package_name;
  std::string class_name;
  std::string class_description;
  std::vector<ApiMethod> methods;
};

ClassPage parse_class_page(const std::string& html) {
  ClassPage page;

  // The h2 title attribute reads "Class Foo", "Interface Foo" or "Enum Foo";
  // anything else (package summaries, index pages, class-use pages) is skipped.
  std::string title = attribute_value(html, "<h2 title=", "title");
  if (title.empty()) {
    // Attribute order can differ; fall back to any h2 with class="title".
    std::size_t pos = 0;
    std::string_view h2 = find_element(html, "h2", "class=\"title\"", &pos);
    if (!h2.empty()) {
      std::size_t at = html.find("<h2");
      std::size_t tag_end = html.find('>', at);
      std::string_view tag = std::string_view(html).substr(at, tag_end - at);
      std::string prefix = "title=\"";
      std::size_t a = tag.find(prefix);
      if (a != std::string_view::npos) {
        std::size_t v = a + prefix.size();
        std::size_t e = tag.find('"', v);
        if (e != std::string_view::npos) title = decode_entities(tag.substr(v, e - v));
      }
      if (title.empty()) title = html_to_text(std::string(h2));
    }
  }
  static const char* kKinds[] = {"Class ", "Interface ", "Enum ", "Annotation Type "};
  std::string rest;
  for (const char* kind : kKinds) {
    if (title.rfind(kind, 0) == 0) {
      rest = title.substr(std::string(kind).size());
      break;
    }
  }
  if (rest.empty()) return page;

  // Drop a generic suffix and any qualifier: "org.easymock.IMockBuilder<T>".
  std::size_t lt = rest.find('<');
  if (lt != std::string::npos) rest = rest.substr(0, lt);
  std::size_t last_dot = rest.rfind('.');
  page.class_name = trim(last_dot == std::string::npos ? rest : rest.substr(last_dot + 1));
  if (page.class_name.empty()) return page;
  if (last_dot != std::string::npos) page.package_name = trim(rest.substr(0, last_dot));

  if (page.package_name.empty()) {
    std::size_t pos = 0;
    std::string_view sub = find_element(html, "div", "class=\"subTitle\"", &pos);
    std::string pkg = html_to_text(std::string(sub));
    // Java 8 pages sometimes list compact profiles on the same line.
    std::size_t space = pkg.rfind(' ');
    if (space != std::string::npos) pkg = pkg.substr(space + 1);
    page.package_name = pkg;
  }
  page.recognized = true;

  std::size_t desc_at = html.find("class=\"description\"");
  if (desc_at != std::string::npos) {
    std::size_t pos = desc_at;
    std::string_view block = find_element(html, "div", "class=\"block\"", &pos);
    std::size_t summary_at = html.find("class=\"summary\"");
    std::size_t block_at = html.find("class=\"block\"", desc_at);
    if (!block.empty() && (summary_at == std::string::npos || block_at < summary_at)) {
      page.class_description = html_to_text(std::string(block));
    }
  }

  std::size_t detail = html.find(">Method Detail<");
  if (detail == std::string::npos) detail = html.find(">Method Details<");
  if (detail == std::string::npos) return page;
  std::string_view region = std::string_view(html).substr(detail);

  std::size_t cursor = 0;
  while (true) {
    std::size_t h4 = region.find("<h4>", cursor);
    if (h4 == std::string_view::npos) break;
    std::size_t h4_end = region.find("</h4>", h4);
    if (h4_end == std::string_view::npos) break;
    std::string name = html_to_text(std::string(region.substr(h4 + 4, h4_end - h4 - 4)));
    std::size_t next = region.find("<h4>", h4_end);
    std::string_view block = region.substr(h4_end, (next == std::string_view::npos)
                                                       ? region.size() - h4_end
                                                       : next - h4_end);
    cursor = h4_end;

    std::size_t p = 0;
    std::string signature = html_to_text(std::string(find_element(block, "pre", "", &p)));
    if (name.empty() || signature.empty()) continue;

    ApiMethod method;
    method.package_name = page.package_name;
    method.class_name = page.class_name;
    method.class_description = page.class_description;
    method.method_name = name;
    if (!parse_signature(signature, name, &method.return_type, &method.parameters)) continue;

    std::size_t dl_at = block.find("<dl>");
    std::size_t bp = 0;
    std::string_view desc = find_element(block, "div", "class=\"block\"", &bp);
    // The description block precedes the Parameters/Returns list; a block
    // inside the <dl> belongs to something else.
    if (!desc.empty() && (dl_at == std::string_view::npos || block.find("class=\"block\"") < dl_at)) {
      method.description = html_to_text(std::string(desc));
    }

    if (dl_at != std::string_view::npos) {
      std::string_view dl = block.substr(dl_at);
      std::size_t params_label = dl.find(">Parameters:<");
      if (params_label != std::string_view::npos) {
        std::size_t q = params_label;
        while (true) {
          std::size_t dd = dl.find("<dd>", q);
          std::size_t dt = dl.find("<dt>", params_label + 1);
          if (dd == std::string_view::npos || (dt != std::string_view::npos && dd > dt)) break;
          std::size_t dd_end = dl.find("</dd>", dd);
          if (dd_end == std::string_view::npos) break;
          std::string entry = html_to_text(std::string(dl.substr(dd + 4, dd_end - dd - 4)));
          std::size_t sep = entry.find(" - ");
          std::string pname = sep == std::string::npos ? entry : entry.substr(0, sep);
          std::string pdesc = sep == std::string::npos ? "" : entry.substr(sep + 3);
          for (auto& param : method.parameters) {
            if (param.name == pname && param.description.empty()) {
              param.description = pdesc;
              break;
            }
          }
          q = dd_end;
        }
      }
      std::size_t returns_label = dl.find(">Returns:<");
      if (returns_label != std::string_view::npos) {
        std::size_t dd = dl.find("<dd>", returns_label);
        std::size_t dd_end = dl.find("</dd>", dd);
        if (dd != std::string_view::npos && dd_end != std::string_view::npos) {
          method.return_description = html_to_text(std::string(dl.substr(dd + 4, dd_end - dd - 4)));
        }
      }
    }

    page.methods.push_back(std::move(method));
  }
  return page;
}

}  // namespace

ApiLibrary parse_javadoc_html(const std::filesystem::path& doc_dir, std::string library_name,
                              std::string library_version, std::vector<std::string>* warnings) {
  std::vector<std::filesystem::path> pages;
  std::error_code ec;
  for (auto it = std::filesystem::recursive_directory_iterator(doc_dir, ec);
       !ec && it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    auto ext = it->path().extension().string();
    if (ext == ".html" || ext == ".htm") pages.push_back(it->path());
  }
  if (ec) throw IoFailure("cannot walk " + doc_dir.string() + ": " + ec.message());
  std::sort(pages.begin(), pages.end());

  std::size_t recognized = 0;
  std::vector<ApiMethod> methods;
  std::vector<std::string> seen_ids;

  for (const auto& path : pages) {
    std::ifstream in(path, std::ios::binary);
    if (!in) continue;
    std::ostringstream buf;
    buf << in.rdbuf();

    ClassPage page;
    try {
      page = parse_class_page(buf.str());
    } catch (const std::exception& e) {
      if (warnings != nullptr) {
        warnings->push_back("skipped " + path.string() + ": " + e.what());
      }
      continue;
    }
    if (!page.recognized) continue;
    ++recognized;
    if (page.methods.empty() && warnings != nullptr) {
      warnings->push_back("no method details in " + path.string());
    }
    for (auto& m : page.methods) {
      std::string id = m.qualified_id();
      if (std::find(seen_ids.begin(), seen_ids.end(), id) != seen_ids.end()) {
        if (warnings != nullptr) warnings->push_back("duplicate method " + id + " ignored");
        continue;
      }
      seen_ids.push_back(std::move(id));
      methods.push_back(std::move(m));
    }
  }

  if (recognized == 0) {
    throw NoClassPagesFound("no javadoc class pages under " + doc_dir.string());
  }
  return ApiLibrary(std::move(library_name), std::move(library_version), std::move(methods));
}

}  // namespace migmap::corpus
