#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrkit/graph.hpp"

namespace amrkit {

using MetadataEntry = std::pair<std::string, std::string>;

// One sentence/AMR pair. `metadata` holds every "# ::key value" pair in file
// order, including ::id and ::snt.
struct CorpusDocument {
  std::string id;
  std::string snt;
  std::vector<MetadataEntry> metadata;
  AmrGraph graph;
  std::string source_tag;

  friend bool operator==(const CorpusDocument&, const CorpusDocument&) = default;
};

struct Corpus {
  std::string name;
  std::vector<CorpusDocument> documents;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
};

// Metadata key used to persist CorpusDocument::source_tag in corpus files.
inline constexpr std::string_view kSourceTagKey = "source-tag";

// Splits one "# ::a x ::b y" comment line into its key/value pairs.
std::vector<MetadataEntry> parse_metadata_line(std::string_view line);

// Builds a document: ::id and ::snt are taken from metadata when present.
CorpusDocument make_document(std::string id, std::string snt, AmrGraph graph,
                             std::string source_tag = {},
                             std::vector<MetadataEntry> metadata = {});

struct ReadOptions {
  std::string name;
  // Overrides any per-document ::source-tag; when both are absent the corpus
  // name is used.
  std::string source_tag;
};

// Parses a corpus: documents separated by blank lines, each an optional run of
// "# ::" metadata lines followed by one PENMAN expression. Documents without
// an ::id are numbered "doc-1", "doc-2", ... in file order.
Corpus read_corpus(std::string_view text, const ReadOptions& options = {});
Corpus read_corpus_file(const std::filesystem::path& path,
                        const ReadOptions& options = {});

std::string write_document(const CorpusDocument& doc);
std::string write_corpus(const Corpus& corpus);
void write_corpus_file(const Corpus& corpus, const std::filesystem::path& path);

struct DocumentPair {
  const CorpusDocument* predicted;
  const CorpusDocument* reference;
};

// Pairs documents by id, in predicted-corpus order. Throws MismatchError when
// the corpora differ in length or id set, InvalidArgumentError when empty.
std::vector<DocumentPair> pair_documents(const Corpus& predicted,
                                         const Corpus& reference);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace amrkit
