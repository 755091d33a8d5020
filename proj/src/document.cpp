#include "amrkit/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
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

bool is_blank(std::string_view line) { return trim(line).empty(); }

const std::string* find_entry(const std::vector<MetadataEntry>& metadata,
                              std::string_view key) {
  for (const auto& [k, v] : metadata)
    if (k == key) return &v;
  return nullptr;
}

}  // namespace

std::vector<MetadataEntry> parse_metadata_line(std::string_view line) {
  std::vector<MetadataEntry> out;
  line = trim(line);
  if (line.empty() || line.front() != '#') return out;
  line.remove_prefix(1);

  // Start offsets of "::" markers that begin a key (start of line or after
  // whitespace).
  std::vector<std::size_t> marks;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == ':' && line[i + 1] == ':' &&
        (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      marks.push_back(i);
      ++i;
    }
  }
  for (std::size_t m = 0; m < marks.size(); ++m) {
    const std::size_t end = m + 1 < marks.size() ? marks[m + 1] : line.size();
    std::string_view field = line.substr(marks[m] + 2, end - marks[m] - 2);
    std::size_t space = 0;
    while (space < field.size() && !std::isspace(static_cast<unsigned char>(field[space])))
      ++space;
    std::string key(field.substr(0, space));
    if (key.empty()) continue;
    out.emplace_back(std::move(key), std::string(trim(field.substr(space))));
  }
  return out;
}

CorpusDocument make_document(std::string id, std::string snt, AmrGraph graph,
                             std::string source_tag,
                             std::vector<MetadataEntry> metadata) {
  if (const auto* v = find_entry(metadata, "id"); v != nullptr && id.empty()) id = *v;
  if (const auto* v = find_entry(metadata, "snt"); v != nullptr && snt.empty()) snt = *v;
  if (find_entry(metadata, "snt") == nullptr && !snt.empty())
    metadata.insert(metadata.begin(), {"snt", snt});
  if (find_entry(metadata, "id") == nullptr)
    metadata.insert(metadata.begin(), {"id", id});
  return CorpusDocument{std::move(id), std::move(snt), std::move(metadata),
                        std::move(graph), std::move(source_tag)};
}

Corpus read_corpus(std::string_view text, const ReadOptions& options) {
  Corpus corpus;
  corpus.name = options.name;
  std::unordered_set<std::string> ids;

  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  std::size_t i = 0;
  while (i < lines.size()) {
    if (is_blank(lines[i])) {
      ++i;
      continue;
    }
    const std::size_t first_line = i;
    std::string block;
    std::vector<MetadataEntry> metadata;
    bool in_graph = false;
    for (; i < lines.size() && !is_blank(lines[i]); ++i) {
      if (!in_graph && trim(lines[i]).front() == '#') {
        for (auto& entry : parse_metadata_line(lines[i])) metadata.push_back(std::move(entry));
      } else {
        in_graph = true;
      }
      block.append(lines[i]);
      block.push_back('\n');
    }
    const std::size_t doc_number = corpus.documents.size() + 1;
    const std::string where =
        (options.name.empty() ? std::string("corpus") : options.name) +
        ", document " + std::to_string(doc_number);
    if (!in_graph)
      throw ParseError::at_text(where + ": metadata without a graph",
                                first_line + 1, 1);

    AmrGraph graph;
    try {
      graph = parse_penman(block);
    } catch (const ParseError& e) {
      throw ParseError::at_text(where + ": " + e.detail(), first_line + e.line(),
                                e.column());
    }

    std::string tag = options.source_tag;
    auto tag_it = std::find_if(metadata.begin(), metadata.end(),
                               [](const MetadataEntry& m) { return m.first == kSourceTagKey; });
    if (tag_it != metadata.end()) {
      if (tag.empty()) tag = tag_it->second;
      metadata.erase(tag_it);
    }
    if (tag.empty()) tag = options.name;

    std::string id;
    if (const auto* v = find_entry(metadata, "id"); v != nullptr && !v->empty()) {
      id = *v;
    } else {
      id = "doc-" + std::to_string(doc_number);
      std::erase_if(metadata, [](const MetadataEntry& m) { return m.first == "id"; });
    }
    if (!ids.insert(id).second)
      throw InvalidArgumentError(where + ": duplicate document id '" + id + "'");
    corpus.documents.push_back(
        make_document(std::move(id), {}, std::move(graph), std::move(tag), std::move(metadata)));
  }
  return corpus;
}

std::vector<DocumentPair> pair_documents(const Corpus& predicted,
                                         const Corpus& reference) {
  if (predicted.empty() && reference.empty())
    throw InvalidArgumentError("cannot score an empty corpus");
  if (predicted.size() != reference.size())
    throw MismatchError("corpora differ in length: " +
                        std::to_string(predicted.size()) + " predicted vs " +
                        std::to_string(reference.size()) + " reference documents");
  std::unordered_map<std::string_view, const CorpusDocument*> by_id;
  for (const auto& doc : reference.documents) by_id.emplace(doc.id, &doc);
  std::vector<DocumentPair> pairs;
  pairs.reserve(predicted.size());
  for (const auto& doc : predicted.documents) {
    auto it = by_id.find(doc.id);
    if (it == by_id.end())
      throw MismatchError("document id '" + doc.id +
                          "' is missing from the reference corpus");
    pairs.push_back({&doc, it->second});
  }
  return pairs;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Corpus read_corpus_file(const std::filesystem::path& path, const ReadOptions& options) {
  ReadOptions effective = options;
  if (effective.name.empty()) effective.name = path.stem().string();
  return read_corpus(read_text_file(path), effective);
}

std::string write_document(const CorpusDocument& doc) {
  std::string out;
  bool wrote_id = false;
  for (const auto& [key, value] : doc.metadata) {
    wrote_id = wrote_id || key == "id";
    out += "# ::" + key;
    if (!value.empty()) out += " " + value;
    out += '\n';
  }
  if (!wrote_id) out.insert(0, "# ::id " + doc.id + "\n");
  if (!doc.source_tag.empty())
    out += "# ::" + std::string(kSourceTagKey) + " " + doc.source_tag + "\n";
  out += serialize_penman(doc.graph);
  out += '\n';
  return out;
}

std::string write_corpus(const Corpus& corpus) {
  std::string out;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    if (i > 0) out += '\n';
    out += write_document(corpus.documents[i]);
  }
  return out;
}

void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path) {
  write_text_file(path, write_corpus(corpus));
}

}  // namespace amrkit
