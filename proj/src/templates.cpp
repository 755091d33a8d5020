#include "amrkit/templates.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "amrkit/error.hpp"
#include "amrkit/penman.hpp"

namespace amrkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::optional<PlaceholderType> parse_type(std::string_view type) {
  if (type == "num") return PlaceholderType::kNum;
  if (type == "word") return PlaceholderType::kWord;
  if (type == "unit") return PlaceholderType::kUnit;
  return std::nullopt;
}

std::string regex_escape(std::string_view literal) {
  static const std::string_view kSpecial = R"(\^$.|?*+()[]{}/)";
  std::string out;
  bool in_space = false;
  for (char c : literal) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_space) out += R"(\s+)";
      in_space = true;
      continue;
    }
    in_space = false;
    if (kSpecial.find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

// Names of the {slot} markers in a skeleton, in order of appearance.
std::vector<std::string> skeleton_slots(std::string_view skeleton) {
  std::vector<std::string> slots;
  for (std::size_t i = skeleton.find('{'); i != std::string_view::npos;
       i = skeleton.find('{', i + 1)) {
    const std::size_t close = skeleton.find('}', i);
    if (close == std::string_view::npos) break;
    slots.emplace_back(skeleton.substr(i + 1, close - i - 1));
  }
  return slots;
}

std::string probe_value(PlaceholderType type, const UnitTable& units) {
  switch (type) {
    case PlaceholderType::kNum: return "1";
    case PlaceholderType::kWord: return "x";
    case PlaceholderType::kUnit:
      return units.empty() ? std::string("unit") : units.entries().begin()->second;
  }
  return "x";
}

bool type_valid(PlaceholderType type, const std::string& value) {
  if (type == PlaceholderType::kNum) return is_numeric_literal(value);
  return is_plain_symbol(value);
}

}  // namespace

UnitTable UnitTable::defaults() {
  return UnitTable(Map{
      {"%", "percentage-entity"},
      {"C", "celsius"},
      {"F", "fahrenheit"},
      {"bpm", "beat-per-minute"},
      {"centimeter", "centimeter"},
      {"centimeters", "centimeter"},
      {"cm", "centimeter"},
      {"ft", "foot"},
      {"g", "gram"},
      {"in", "inch"},
      {"inches", "inch"},
      {"kg", "kilogram"},
      {"kilograms", "kilogram"},
      {"lb", "pound"},
      {"lbs", "pound"},
      {"m", "meter"},
      {"mm", "millimeter"},
      {"mmHg", "millimeter-of-mercury"},
  });
}

bool UnitTable::contains(std::string_view surface) const {
  return units_.find(surface) != units_.end();
}

std::string UnitTable::concept_for(std::string_view surface) const {
  auto it = units_.find(surface);
  return it == units_.end() ? std::string(surface) : it->second;
}

Template::Template(std::string name, std::string pattern, std::string skeleton)
    : name_(std::move(name)), pattern_(std::move(pattern)), skeleton_(std::move(skeleton)) {
  const std::string where = "template '" + name_ + "'";
  std::string source;
  std::size_t pos = 0;
  while (pos < pattern_.size()) {
    const std::size_t open = pattern_.find('{', pos);
    source += regex_escape(std::string_view(pattern_).substr(
        pos, (open == std::string::npos ? pattern_.size() : open) - pos));
    if (open == std::string::npos) break;
    const std::size_t close = pattern_.find('}', open);
    if (close == std::string::npos)
      throw InvalidArgumentError(where + ": unterminated placeholder in pattern");
    std::string_view spec = std::string_view(pattern_).substr(open + 1, close - open - 1);
    const std::size_t colon = spec.find(':');
    const std::string_view type_text = spec.substr(0, colon);
    const auto type = parse_type(type_text);
    if (!type)
      throw InvalidArgumentError(where + ": unknown placeholder type '" +
                                 std::string(type_text) + "'");
    std::string slot(colon == std::string_view::npos ? type_text : spec.substr(colon + 1));
    for (const auto& p : placeholders_)
      if (p.name == slot)
        throw InvalidArgumentError(where + ": placeholder '" + slot + "' defined twice");
    placeholders_.push_back({slot, *type});
    source += *type == PlaceholderType::kNum ? R"(([+-]?\d+(?:\.\d+)?))" : R"((\S+?))";
    pos = close + 1;
  }
  regex_ = std::regex(source);

  for (const auto& slot : skeleton_slots(skeleton_)) {
    const bool defined = std::any_of(placeholders_.begin(), placeholders_.end(),
                                     [&](const Placeholder& p) { return p.name == slot; });
    if (!defined)
      throw InvalidArgumentError(where + ": skeleton slot {" + slot +
                                 "} does not appear in the pattern");
  }
}

std::optional<Captures> Template::match(std::string_view sentence,
                                        const UnitTable& units) const {
  sentence = trim(sentence);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(sentence.begin(), sentence.end(), m, regex_)) return std::nullopt;
  Captures captures;
  for (std::size_t k = 0; k < placeholders_.size(); ++k) {
    std::string value = m[k + 1].str();
    if (placeholders_[k].type == PlaceholderType::kUnit && !units.contains(value))
      return std::nullopt;
    captures.emplace(placeholders_[k].name, std::move(value));
  }
  return captures;
}

TemplateRegistry::TemplateRegistry(std::vector<Template> templates, UnitTable units)
    : templates_(std::move(templates)), units_(std::move(units)) {
  for (const auto& t : templates_) {
    Captures probe;
    for (const auto& p : t.placeholders()) probe.emplace(p.name, probe_value(p.type, units_));
    try {
      fill(t, probe);
    } catch (const Error& e) {
      throw InvalidArgumentError("template '" + t.name() +
                                 "' does not produce a valid AMR: " + e.what());
    }
  }
}

TemplateRegistry TemplateRegistry::parse(std::string_view text) {
  std::vector<Template> templates;
  UnitTable::Map units;
  bool saw_units = false;

  std::vector<std::string_view> record;
  auto flush = [&] {
    if (record.empty()) return;
    if (trim(record.front()) == "@units") {
      saw_units = true;
      for (std::size_t k = 1; k < record.size(); ++k) {
        std::string_view line = trim(record[k]);
        const std::size_t space = line.find_first_of(" \t");
        std::string surface(line.substr(0, space));
        std::string concept_label(space == std::string_view::npos
                                      ? surface
                                      : std::string(trim(line.substr(space))));
        units[surface] = concept_label;
      }
    } else {
      if (record.size() < 3)
        throw InvalidArgumentError("template record '" + std::string(trim(record.front())) +
                                   "' needs a name, a pattern, and a skeleton");
      std::string skeleton;
      for (std::size_t k = 2; k < record.size(); ++k) {
        skeleton.append(record[k]);
        skeleton.push_back('\n');
      }
      templates.emplace_back(std::string(trim(record[0])), std::string(trim(record[1])),
                             std::move(skeleton));
    }
    record.clear();
  };

  for (std::string_view line : split_lines(text)) {
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (trim(line).front() == '#') continue;
    record.push_back(line);
  }
  flush();
  return TemplateRegistry(std::move(templates),
                          saw_units ? UnitTable(std::move(units)) : UnitTable::defaults());
}

TemplateRegistry TemplateRegistry::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

std::optional<TemplateMatch> match_template(std::string_view sentence,
                                            const TemplateRegistry& registry) {
  for (const auto& t : registry.templates()) {
    if (auto captures = t.match(sentence, registry.units()))
      return TemplateMatch{&t, std::move(*captures)};
  }
  return std::nullopt;
}

AmrGraph fill(const Template& templ, const Captures& captures) {
  const std::string where = "template '" + templ.name() + "'";
  for (const auto& p : templ.placeholders()) {
    auto it = captures.find(p.name);
    if (it == captures.end())
      throw InvalidArgumentError(where + ": missing capture {" + p.name + "}");
    if (!type_valid(p.type, it->second))
      throw InvalidArgumentError(where + ": value '" + it->second +
                                 "' is not valid for {" + p.name + "}");
  }

  const std::string& skeleton = templ.skeleton();
  std::string text;
  std::size_t pos = 0;
  while (pos < skeleton.size()) {
    const std::size_t open = skeleton.find('{', pos);
    const std::size_t close =
        open == std::string::npos ? std::string::npos : skeleton.find('}', open);
    if (close == std::string::npos) {
      text.append(skeleton, pos, std::string::npos);
      break;
    }
    text.append(skeleton, pos, open - pos);
    text += captures.at(skeleton.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  AmrGraph graph = parse_penman(text);
  require_valid(graph);
  return graph;
}

Captures normalize_units(const Template& templ, const Captures& captures,
                         const UnitTable& units) {
  Captures out = captures;
  for (const auto& p : templ.placeholders()) {
    if (p.type != PlaceholderType::kUnit) continue;
    if (auto it = out.find(p.name); it != out.end()) it->second = units.concept_for(it->second);
  }
  return out;
}

std::string normalize_phrase(std::string_view phrase) {
  std::string out;
  bool pending_space = false;
  for (char c : trim(phrase)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

NeDictionary NeDictionary::parse(std::string_view text,
                                 const std::vector<std::string>& ne_types) {
  const std::unordered_set<std::string> allowed(ne_types.begin(), ne_types.end());
  const Corpus records = read_corpus(text, {"ne-dictionary", {}});
  NeDictionary out;
  for (const auto& doc : records.documents) {
    std::string phrase, type;
    for (const auto& [key, value] : doc.metadata) {
      if (key == "phrase") phrase = value;
      if (key == "type") type = value;
    }
    if (phrase.empty())
      throw InvalidArgumentError("dictionary entry '" + doc.id + "' has no ::phrase");
    if (!allowed.count(type))
      throw InvalidArgumentError("dictionary entry '" + phrase +
                                 "' has unknown NE type '" + type + "'");
    out.add(std::move(phrase), std::move(type), doc.graph);
  }
  return out;
}

NeDictionary NeDictionary::load(const std::filesystem::path& path,
                                const std::vector<std::string>& ne_types) {
  return parse(read_text_file(path), ne_types);
}

void NeDictionary::add(std::string phrase, std::string ne_type, AmrGraph fragment) {
  std::string key = normalize_phrase(phrase);
  if (key.empty()) throw InvalidArgumentError("dictionary phrase is empty");
  try {
    require_valid(fragment);
  } catch (const InvalidGraphError& e) {
    throw InvalidGraphError("dictionary entry '" + key + "': " + e.what());
  }
  if (entries_.count(key))
    throw InvalidArgumentError("duplicate dictionary phrase '" + key + "'");
  DictionaryEntry entry{key, std::move(ne_type), std::move(fragment)};
  entries_.emplace(std::move(key), std::move(entry));
}

const DictionaryEntry* NeDictionary::find(std::string_view phrase) const {
  auto it = entries_.find(normalize_phrase(phrase));
  return it == entries_.end() ? nullptr : &it->second;
}

VariableNamer::VariableNamer(const AmrGraph& host) {
  for (const auto& n : host.nodes()) taken_.insert(n.id);
}

std::string VariableNamer::fresh(std::string_view concept_label) {
  std::string prefix = "x";
  if (!concept_label.empty() && std::isalpha(static_cast<unsigned char>(concept_label.front())))
    prefix = std::string(1, static_cast<char>(std::tolower(
                                static_cast<unsigned char>(concept_label.front()))));
  std::string candidate = prefix;
  for (std::size_t k = 2; taken_.count(candidate); ++k) candidate = prefix + std::to_string(k);
  taken_.insert(candidate);
  return candidate;
}

std::optional<AmrGraph> lookup(std::string_view phrase, const NeDictionary& dictionary,
                               VariableNamer& namer) {
  const DictionaryEntry* entry = dictionary.find(phrase);
  if (entry == nullptr) return std::nullopt;
  const AmrGraph& fragment = entry->fragment;

  std::map<std::string, std::string> renamed;
  for (const auto& var : traversal_order(fragment))
    renamed.emplace(var, namer.fresh(*fragment.label_of(var)));

  std::vector<Node> nodes;
  for (const auto& n : fragment.nodes()) nodes.push_back({renamed.at(n.id), n.label});
  std::vector<Edge> edges;
  for (const auto& e : fragment.edges())
    edges.push_back({renamed.at(e.source), e.role, renamed.at(e.target)});
  std::vector<Attribute> attributes;
  for (const auto& a : fragment.attributes())
    attributes.push_back({renamed.at(a.source), a.role, a.value});
  return AmrGraph(renamed.at(fragment.root()), std::move(nodes), std::move(edges),
                  std::move(attributes));
}

std::optional<AmrGraph> lookup(std::string_view phrase, const NeDictionary& dictionary) {
  VariableNamer namer;
  return lookup(phrase, dictionary, namer);
}

AmrGraph attach(const AmrGraph& host, std::string_view parent, std::string_view role,
                const AmrGraph& fragment) {
  if (!host.has_variable(parent))
    throw InvalidArgumentError("attach: parent '" + std::string(parent) +
                               "' is not a variable of the host graph");
  std::vector<Node> nodes(host.nodes().begin(), host.nodes().end());
  for (const auto& n : fragment.nodes()) {
    if (host.has_variable(n.id))
      throw InvalidArgumentError("attach: fragment variable '" + n.id +
                                 "' already exists in the host graph");
    nodes.push_back(n);
  }
  std::vector<Edge> edges(host.edges().begin(), host.edges().end());
  edges.push_back({std::string(parent), std::string(role), fragment.root()});
  edges.insert(edges.end(), fragment.edges().begin(), fragment.edges().end());
  std::vector<Attribute> attributes(host.attributes().begin(), host.attributes().end());
  attributes.insert(attributes.end(), fragment.attributes().begin(),
                    fragment.attributes().end());
  AmrGraph merged(host.root(), std::move(nodes), std::move(edges), std::move(attributes));
  require_valid(merged);
  return merged;
}

TemplatizeResult templatize(std::string_view sentences, const TemplateRegistry& registry,
                            const NeDictionary& dictionary, std::string_view id_prefix) {
  TemplatizeResult out;
  out.corpus.name = std::string(id_prefix);
  const auto lines = split_lines(sentences);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string sentence(trim(lines[k]));
    if (sentence.empty()) continue;
    const std::string id = std::string(id_prefix) + "-" + std::to_string(k + 1);
    if (auto match = match_template(sentence, registry)) {
      AmrGraph graph =
          fill(*match->templ, normalize_units(*match->templ, match->captures, registry.units()));
      out.corpus.documents.push_back(make_document(id, sentence, std::move(graph), "template",
                                                   {{"id", id},
                                                    {"snt", sentence},
                                                    {"template", match->templ->name()}}));
    } else if (auto fragment = lookup(sentence, dictionary)) {
      const std::string type = dictionary.find(sentence)->ne_type;
      out.corpus.documents.push_back(make_document(
          id, sentence, std::move(*fragment), "ne-dictionary",
          {{"id", id}, {"snt", sentence}, {"ne-type", type}}));
    } else {
      out.unmatched.push_back({k + 1, sentence});
    }
  }
  return out;
}

}  // namespace amrkit
