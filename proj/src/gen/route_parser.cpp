#include "retro/gen/route_parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "retro/chem/smiles.hpp"

namespace retro::gen {

namespace {

// Minimal value model for the tolerant python-ish dictionary syntax.
struct Value {
  enum class Kind { String, List, Dict } kind = Kind::String;
  std::string str;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> entries;
};

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) : text_(text) {}

  std::optional<Value> parse() {
    skip_ws();
    auto v = parse_value(0);
    return v;
  }

 private:
  static constexpr int kMaxDepth = 64;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eof() const { return pos_ >= text_.size(); }

  std::optional<Value> parse_value(int depth) {
    if (depth > kMaxDepth || eof())
      return std::nullopt;
    skip_ws();
    if (eof())
      return std::nullopt;
    char c = text_[pos_];
    if (c == '[')
      return parse_list(depth);
    if (c == '{')
      return parse_dict(depth);
    if (c == '\'' || c == '"')
      return parse_string();
    return parse_bare();
  }

  std::optional<Value> parse_string() {
    char quote = text_[pos_];
    ++pos_;
    Value v;
    v.kind = Value::Kind::String;
    while (!eof() && text_[pos_] != quote) {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == quote || text_[pos_ + 1] == '\\')) {
        v.str += text_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      v.str += text_[pos_];
      ++pos_;
    }
    if (eof())
      return std::nullopt;  // unterminated
    ++pos_;
    return v;
  }

  std::optional<Value> parse_bare() {
    Value v;
    v.kind = Value::Kind::String;
    while (!eof()) {
      char c = text_[pos_];
      if (c == ',' || c == ']' || c == '}' || c == ':' || c == '\n')
        break;
      v.str += c;
      ++pos_;
    }
    while (!v.str.empty() && std::isspace(static_cast<unsigned char>(v.str.back())))
      v.str.pop_back();
    if (v.str.empty())
      return std::nullopt;
    return v;
  }

  std::optional<Value> parse_list(int depth) {
    ++pos_;  // '['
    Value v;
    v.kind = Value::Kind::List;
    while (true) {
      skip_ws();
      if (eof())
        return std::nullopt;
      if (text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      auto item = parse_value(depth + 1);
      if (!item)
        return std::nullopt;
      v.items.push_back(std::move(*item));
    }
  }

  std::optional<Value> parse_dict(int depth) {
    ++pos_;  // '{'
    Value v;
    v.kind = Value::Kind::Dict;
    while (true) {
      skip_ws();
      if (eof())
        return std::nullopt;
      if (text_[pos_] == '}') {
        ++pos_;
        return v;
      }
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      auto key = parse_value(depth + 1);
      if (!key || key->kind != Value::Kind::String)
        return std::nullopt;
      skip_ws();
      if (eof() || text_[pos_] != ':')
        return std::nullopt;
      ++pos_;
      auto val = parse_value(depth + 1);
      if (!val)
        return std::nullopt;
      v.entries.emplace_back(key->str, std::move(*val));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_quotes(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                        (s.front() == '"' && s.back() == '"')))
    s = trim(s.substr(1, s.size() - 2));
  return s;
}

bool parses_as_molecule(const std::string& s) {
  try {
    chem::parse_smiles(s);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Interprets a field value as a list of molecule strings. A string that is
// itself a valid SMILES stays whole (so "[nH]..." bracket atoms are not
// mistaken for list syntax); otherwise outer brackets are stripped and the
// content split on commas, which never occur inside SMILES.
std::vector<std::string> molecule_list(const Value& v) {
  std::vector<std::string> out;
  if (v.kind == Value::Kind::List) {
    for (const auto& item : v.items)
      if (item.kind == Value::Kind::String) {
        auto s = strip_quotes(item.str);
        if (!s.empty())
          out.push_back(s);
      }
    return out;
  }
  if (v.kind != Value::Kind::String)
    return out;
  std::string s = trim(v.str);
  if (s.empty())
    return out;
  if (parses_as_molecule(s)) {
    out.push_back(s);
    return out;
  }
  if (s.front() == '[' && s.back() == ']')
    s = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string piece = comma == std::string::npos ? s.substr(start)
                                                   : s.substr(start, comma - start);
    piece = strip_quotes(piece);
    if (!piece.empty())
      out.push_back(piece);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

std::string template_text(const Value& v) {
  if (v.kind == Value::Kind::String)
    return strip_quotes(v.str);
  if (v.kind == Value::Kind::List) {
    std::string out;
    for (const auto& item : v.items) {
      if (item.kind != Value::Kind::String)
        continue;
      if (!out.empty())
        out += "; ";
      out += strip_quotes(item.str);
    }
    return out;
  }
  return {};
}

std::optional<mapping::RawStep> step_from_dict(const Value& dict, std::string* issue) {
  const Value* product = nullptr;
  const Value* reactants = nullptr;
  const Value* reaction = nullptr;
  for (const auto& [key, value] : dict.entries) {
    std::string k = lower(trim(key));
    if (k == "product")
      product = &value;
    else if (k == "reactants")
      reactants = &value;
    else if (k == "reaction")
      reaction = &value;
  }
  if (!product || !reactants) {
    *issue = "step missing Product or Reactants";
    return std::nullopt;
  }
  auto products = molecule_list(*product);
  auto reactant_list = molecule_list(*reactants);
  if (products.empty()) {
    *issue = "step has empty Product";
    return std::nullopt;
  }
  if (reactant_list.empty()) {
    *issue = "step has empty Reactants";
    return std::nullopt;
  }
  mapping::RawStep step;
  step.product = products.front();
  step.reactants = std::move(reactant_list);
  if (reaction)
    step.reaction_template = template_text(*reaction);
  return step;
}

// Case-insensitive substring search.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from) {
  if (needle.empty() || haystack.size() < needle.size())
    return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (std::tolower(static_cast<unsigned char>(haystack[i + j])) !=
          std::tolower(static_cast<unsigned char>(needle[j]))) {
        match = false;
        break;
      }
    }
    if (match)
      return i;
  }
  return std::string_view::npos;
}

}  // namespace

ParsedRoutes parse_route_response(std::string_view text) {
  ParsedRoutes out;
  std::size_t cursor = 0;
  int block_index = 0;
  while (true) {
    std::size_t open = ifind(text, "<ROUTE>", cursor);
    if (open == std::string_view::npos)
      break;
    out.found_route_block = true;
    std::size_t body_start = open + 7;
    std::size_t close = ifind(text, "</ROUTE>", body_start);
    std::string_view body;
    if (close == std::string_view::npos) {
      body = text.substr(body_start);  // unterminated final block: best effort
      cursor = text.size();
    } else {
      body = text.substr(body_start, close - body_start);
      cursor = close + 8;
    }
    ++block_index;

    ValueParser parser(body);
    auto value = parser.parse();
    if (!value) {
      out.diagnostics.push_back("block " + std::to_string(block_index) +
                                ": unparseable route body");
      continue;
    }
    std::vector<const Value*> dicts;
    if (value->kind == Value::Kind::Dict) {
      dicts.push_back(&*value);
    } else if (value->kind == Value::Kind::List) {
      for (const auto& item : value->items)
        if (item.kind == Value::Kind::Dict)
          dicts.push_back(&item);
    }
    if (dicts.empty()) {
      out.diagnostics.push_back("block " + std::to_string(block_index) +
                                ": no step dictionaries");
      continue;
    }
    mapping::RawPathway pathway;
    pathway.provenance = "route-block-" + std::to_string(block_index);
    bool ok = true;
    for (const Value* d : dicts) {
      std::string issue;
      auto step = step_from_dict(*d, &issue);
      if (!step) {
        out.diagnostics.push_back("block " + std::to_string(block_index) + ": " + issue);
        ok = false;
        break;
      }
      pathway.steps.push_back(std::move(*step));
    }
    if (ok && !pathway.steps.empty())
      out.pathways.push_back(std::move(pathway));
  }
  return out;
}

}  // namespace retro::gen
