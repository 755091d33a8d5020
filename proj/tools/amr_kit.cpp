// amr-kit: command-line front end over the amrkit C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amrkit/amrkit.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr unsigned kDefaultRestarts = 4;
constexpr unsigned kDefaultExactCap = 8;

// Runtime failure: message already formatted, exit code 1.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(amrkit_status status) {
  if (status != AMRKIT_OK)
    throw Failure(std::string(amrkit_status_name(status)) + ": " + amrkit_last_error());
}

struct CorpusDeleter {
  void operator()(amrkit_corpus* c) const { amrkit_corpus_free(c); }
};
struct RegistryDeleter {
  void operator()(amrkit_registry* r) const { amrkit_registry_free(r); }
};
struct DictionaryDeleter {
  void operator()(amrkit_dictionary* d) const { amrkit_dictionary_free(d); }
};
using CorpusPtr = std::unique_ptr<amrkit_corpus, CorpusDeleter>;

// Owned C string from the API.
struct CString {
  char* p = nullptr;
  ~CString() { amrkit_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

CorpusPtr read_corpus(const std::string& path, const std::string& tag = "") {
  amrkit_corpus* c = nullptr;
  check(amrkit_corpus_read_file(path.c_str(), tag.empty() ? nullptr : tag.c_str(), &c));
  return CorpusPtr(c);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Failure("cannot write '" + path.string() + "'");
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("AMRKIT_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-')
    throw CLI::ValidationError("AMRKIT_SEED", "not an unsigned integer: " + std::string(env));
  return v;
}

struct ScoreFlags {
  unsigned restarts = kDefaultRestarts;
  unsigned exact_cap = kDefaultExactCap;
  std::string exact = "auto";
  bool top_triple = false;
  unsigned threads = 1;

  void add_to(CLI::App* app) {
    app->add_option("--restarts", restarts, "Hill-climbing restarts")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--exact-cap", exact_cap, "Largest variable count aligned exactly")
        ->capture_default_str();
    app->add_option("--exact", exact, "Exact alignment: auto, always or never")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "always", "never"}));
    app->add_flag("--top-triple", top_triple, "Add the top(root, concept) triple");
    app->add_option("--threads", threads, "Worker threads, 0 for all cores")
        ->capture_default_str();
  }

  amrkit_score_config config(std::uint64_t seed) const {
    amrkit_score_config c;
    amrkit_score_config_init(&c);
    c.restarts = restarts;
    c.exact_cap = exact_cap;
    c.exact_mode = exact == "always" ? AMRKIT_EXACT_ALWAYS
                   : exact == "never" ? AMRKIT_EXACT_NEVER
                                      : AMRKIT_EXACT_AUTO;
    c.top_triple = top_triple ? 1 : 0;
    c.threads = threads;
    c.seed = seed;
    return c;
  }
};

std::vector<size_t> parse_sizes(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw CLI::ValidationError("--sizes", "expected comma-separated counts, got '" + text + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw CLI::ValidationError("--sizes", "no sizes given");
  return out;
}

ordered_json corpus_summary(const amrkit_corpus* c, const std::string& path) {
  std::map<std::string, size_t> tags;
  const size_t n = amrkit_corpus_size(c);
  for (size_t i = 0; i < n; ++i) ++tags[amrkit_corpus_document_source_tag(c, i)];
  ordered_json j;
  j["name"] = amrkit_corpus_name(c);
  j["path"] = path;
  j["size"] = n;
  j["source_tags"] = ordered_json::object();
  for (const auto& [tag, count] : tags) j["source_tags"][tag] = count;
  return j;
}

void write_outputs(const fs::path& dir, const std::vector<const amrkit_corpus*>& parts,
                   ordered_json& manifest) {
  fs::create_directories(dir);
  manifest["outputs"] = ordered_json::array();
  for (const auto* part : parts) {
    const fs::path file = dir / (std::string(amrkit_corpus_name(part)) + ".amr");
    check(amrkit_corpus_write_file(part, file.string().c_str()));
    manifest["outputs"].push_back(corpus_summary(part, file.string()));
  }
  const std::string text = manifest.dump(2) + "\n";
  write_text(dir / "manifest.json", text);
  std::cout << text;
}

// ---- subcommands ----------------------------------------------------------

int run_validate(const std::string& path) {
  auto corpus = read_corpus(path);
  const size_t n = amrkit_corpus_size(corpus.get());
  size_t invalid = 0;
  for (size_t i = 0; i < n; ++i) {
    const char* id = amrkit_corpus_document_id(corpus.get(), i);
    CString diags;
    size_t count = 0;
    check(amrkit_graph_validate(amrkit_corpus_document_graph(corpus.get(), i), &diags.p, &count));
    std::cout << id << '\t' << (count == 0 ? "valid" : "invalid") << '\n';
    if (count == 0) continue;
    ++invalid;
    std::istringstream lines(diags.str());
    for (std::string line; std::getline(lines, line);) std::cerr << id << ": " << line << '\n';
  }
  return invalid == 0 ? 0 : 1;
}

int run_triples(const std::string& path, bool top_triple) {
  auto corpus = read_corpus(path);
  const size_t n = amrkit_corpus_size(corpus.get());
  for (size_t i = 0; i < n; ++i) {
    if (n > 1) std::cout << (i ? "\n" : "") << "# ::id " << amrkit_corpus_document_id(corpus.get(), i) << '\n';
    CString text;
    check(amrkit_graph_triples(amrkit_corpus_document_graph(corpus.get(), i), top_triple ? 1 : 0,
                               &text.p));
    std::cout << text.str();
  }
  return 0;
}

int run_linearize(const std::string& path) {
  auto corpus = read_corpus(path);
  const size_t n = amrkit_corpus_size(corpus.get());
  for (size_t i = 0; i < n; ++i) {
    char** tokens = nullptr;
    size_t count = 0;
    check(amrkit_graph_linearize(amrkit_corpus_document_graph(corpus.get(), i), &tokens, &count));
    std::cout << amrkit_corpus_document_id(corpus.get(), i) << '\t';
    for (size_t t = 0; t < count; ++t) std::cout << (t ? " " : "") << tokens[t];
    std::cout << '\n';
    amrkit_string_array_free(tokens, count);
  }
  return 0;
}

int run_score(const std::string& pred_path, const std::string& ref_path, const ScoreFlags& flags,
              std::uint64_t seed, const std::string& per_doc) {
  auto pred = read_corpus(pred_path);
  auto ref = read_corpus(ref_path);
  const auto cfg = flags.config(seed);
  std::vector<amrkit_score> docs(amrkit_corpus_size(pred.get()));
  amrkit_score total;
  check(amrkit_score_corpus(pred.get(), ref.get(), &cfg, &total, docs.data()));
  std::cout << fixed4(total.precision) << ' ' << fixed4(total.recall) << ' ' << fixed4(total.f1)
            << '\n';
  if (!per_doc.empty()) {
    std::string tsv = "id\tn_correct\tn_pred\tn_ref\tp\tr\tf1\n";
    for (size_t i = 0; i < docs.size(); ++i) {
      const auto& s = docs[i];
      tsv += std::string(amrkit_corpus_document_id(pred.get(), i)) + '\t' +
             std::to_string(s.n_correct) + '\t' + std::to_string(s.n_predicted) + '\t' +
             std::to_string(s.n_reference) + '\t' + fixed4(s.precision) + '\t' +
             fixed4(s.recall) + '\t' + fixed4(s.f1) + '\n';
    }
    if (per_doc == "-") std::cout << tsv;
    else write_text(per_doc, tsv);
  }
  return 0;
}

int run_fine(const std::string& pred_path, const std::string& ref_path, const ScoreFlags& flags,
             std::uint64_t seed, const std::string& format, std::string label,
             const std::string& ne_types) {
  auto pred = read_corpus(pred_path);
  auto ref = read_corpus(ref_path);
  const auto cfg = flags.config(seed);
  const std::string extra = ne_types.empty() ? "" : read_text(ne_types);
  if (label.empty()) label = fs::path(pred_path).stem().string();
  CString out;
  check(amrkit_fine_report_render(pred.get(), ref.get(), &cfg,
                                  ne_types.empty() ? nullptr : extra.c_str(), format.c_str(),
                                  label.c_str(), &out.p));
  std::cout << out.str();
  return 0;
}

int run_split(const std::string& path, const std::string& sizes_text, std::uint64_t seed,
              const std::string& out_dir) {
  const auto sizes = parse_sizes(sizes_text);
  if (sizes.size() != 3) throw CLI::ValidationError("--sizes", "split needs exactly A,B,C");
  auto corpus = read_corpus(path);
  amrkit_corpus *train = nullptr, *dev = nullptr, *test = nullptr;
  check(amrkit_split(corpus.get(), sizes[0], sizes[1], sizes[2], seed, &train, &dev, &test));
  CorpusPtr a(train), b(dev), c(test);
  ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["operation"] = "split";
  manifest["seed"] = seed;
  manifest["sizes"] = sizes;
  manifest["inputs"] = ordered_json::array({corpus_summary(corpus.get(), path)});
  write_outputs(out_dir, {a.get(), b.get(), c.get()}, manifest);
  return 0;
}

int run_mix(const std::string& primary_path, const std::string& secondary_path,
            const std::string& ratio, long long total, std::uint64_t seed,
            const std::string& out_dir) {
  const auto colon = ratio.find(':');
  std::vector<size_t> parts;
  if (colon != std::string::npos) {
    try {
      parts = parse_sizes(ratio.substr(0, colon) + "," + ratio.substr(colon + 1));
    } catch (const CLI::ValidationError&) {
      parts.clear();
    }
  }
  if (parts.size() != 2) throw CLI::ValidationError("--ratio", "expected P:S, got '" + ratio + "'");
  auto primary = read_corpus(primary_path);
  auto secondary = read_corpus(secondary_path);
  amrkit_corpus* mixed = nullptr;
  check(amrkit_mix(primary.get(), secondary.get(), parts[0], parts[1], total, seed, &mixed));
  CorpusPtr out(mixed);
  ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["operation"] = "mix";
  manifest["seed"] = seed;
  manifest["ratio"] = {parts[0], parts[1]};
  manifest["total"] = amrkit_corpus_size(out.get());
  manifest["inputs"] = ordered_json::array(
      {corpus_summary(primary.get(), primary_path), corpus_summary(secondary.get(), secondary_path)});
  write_outputs(out_dir, {out.get()}, manifest);
  return 0;
}

int run_curve(const std::string& path, const std::string& sizes_text, std::uint64_t seed,
              bool independent, const std::string& out_dir) {
  const auto sizes = parse_sizes(sizes_text);
  auto corpus = read_corpus(path);
  std::vector<amrkit_corpus*> raw(sizes.size(), nullptr);
  check(amrkit_curve(corpus.get(), sizes.data(), sizes.size(), seed, independent ? 0 : 1,
                     raw.data()));
  std::vector<CorpusPtr> owned;
  std::vector<const amrkit_corpus*> parts;
  for (auto* c : raw) {
    owned.emplace_back(c);
    parts.push_back(c);
  }
  ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["operation"] = "curve";
  manifest["seed"] = seed;
  manifest["nested"] = !independent;
  manifest["sizes"] = sizes;
  manifest["inputs"] = ordered_json::array({corpus_summary(corpus.get(), path)});
  write_outputs(out_dir, parts, manifest);
  return 0;
}

int run_iaa(const std::vector<std::string>& paths, std::vector<std::string> labels,
            const ScoreFlags& flags, std::uint64_t seed) {
  if (paths.size() < 2) throw CLI::ValidationError("FILES", "iaa needs at least two files");
  if (labels.empty())
    for (const auto& p : paths) labels.push_back(fs::path(p).stem().string());
  if (labels.size() != paths.size())
    throw CLI::ValidationError("--labels", "one label per file is required");
  std::vector<CorpusPtr> owned;
  std::vector<const amrkit_corpus*> sets;
  std::vector<const char*> names;
  for (size_t i = 0; i < paths.size(); ++i) {
    owned.push_back(read_corpus(paths[i]));
    sets.push_back(owned.back().get());
    names.push_back(labels[i].c_str());
  }
  const auto cfg = flags.config(seed);
  CString out;
  check(amrkit_iaa_render(sets.data(), names.data(), sets.size(), &cfg, &out.p));
  std::cout << out.str();
  return 0;
}

int run_templatize(const std::string& registry_path, const std::string& dict_path,
                   const std::string& input, const std::string& out_path,
                   std::string unmatched_path, const std::string& id_prefix,
                   const std::string& ne_types) {
  amrkit_registry* reg = nullptr;
  check(amrkit_registry_load(registry_path.c_str(), &reg));
  std::unique_ptr<amrkit_registry, RegistryDeleter> registry(reg);
  std::unique_ptr<amrkit_dictionary, DictionaryDeleter> dictionary;
  if (!dict_path.empty()) {
    const std::string extra = ne_types.empty() ? "" : read_text(ne_types);
    amrkit_dictionary* d = nullptr;
    check(amrkit_dictionary_load(dict_path.c_str(), ne_types.empty() ? nullptr : extra.c_str(), &d));
    dictionary.reset(d);
  }
  const std::string sentences = read_text(input);
  amrkit_corpus* generated = nullptr;
  CString unmatched;
  check(amrkit_templatize(registry.get(), dictionary.get(), sentences.c_str(), id_prefix.c_str(),
                          &generated, &unmatched.p));
  CorpusPtr corpus(generated);
  check(amrkit_corpus_write_file(corpus.get(), out_path.c_str()));
  if (unmatched_path.empty()) unmatched_path = out_path + ".unmatched.tsv";
  write_text(unmatched_path, unmatched.str());
  const std::string tsv = unmatched.str();
  const size_t unmatched_rows = std::count(tsv.begin(), tsv.end(), '\n') - 1;
  std::cout << "generated\t" << amrkit_corpus_size(corpus.get()) << '\n'
            << "unmatched\t" << unmatched_rows << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amr-kit: AMR graphs, SMATCH scoring, corpus preparation and templates.\n"
               "Defaults: seed " + std::to_string(kDefaultSeed) + " (AMRKIT_SEED overrides), restarts " +
               std::to_string(kDefaultRestarts) + ", exact cap " + std::to_string(kDefaultExactCap) + "."};
  app.require_subcommand(1);
  app.set_version_flag("--version", amrkit_version());

  std::uint64_t seed = 0;
  bool seed_given = false;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { seed = v; seed_given = true; },
        "Master seed (default " + std::to_string(kDefaultSeed) + ", or AMRKIT_SEED)");
  };

  std::string file, pred, ref, format = "tsv", label, ne_types, sizes, out_dir, per_doc;
  bool top_triple = false, independent = false;
  ScoreFlags flags;

  auto* validate = app.add_subcommand("validate", "Check every graph in a corpus file");
  validate->add_option("FILE", file, "Corpus file")->required()->check(CLI::ExistingFile);

  auto* triples = app.add_subcommand("triples", "Print role(source, target) triples");
  triples->add_option("FILE", file, "Corpus file")->required()->check(CLI::ExistingFile);
  triples->add_flag("--top-triple", top_triple, "Add the top(root, concept) triple");

  auto* linearize = app.add_subcommand("linearize", "Print each graph as a token sequence");
  linearize->add_option("FILE", file, "Corpus file")->required()->check(CLI::ExistingFile);

  auto* score = app.add_subcommand("score", "Corpus SMATCH: prints \"P R F1\"");
  score->add_option("--pred", pred, "Predicted corpus")->required()->check(CLI::ExistingFile);
  score->add_option("--ref", ref, "Reference corpus")->required()->check(CLI::ExistingFile);
  score->add_option("--per-doc", per_doc, "Write per-document TSV here ('-' for stdout)");
  flags.add_to(score);
  add_seed(score);

  auto* fine = app.add_subcommand("fine", "Fine-grained report, one row per category");
  fine->add_option("--pred", pred, "Predicted corpus")->required()->check(CLI::ExistingFile);
  fine->add_option("--ref", ref, "Reference corpus")->required()->check(CLI::ExistingFile);
  fine->add_option("--format", format, "tsv, json or md")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "json", "md"}));
  fine->add_option("--model-label", label, "Model name in the report (default: pred file stem)");
  fine->add_option("--ne-types", ne_types, "File of extra NE types, one per line")
      ->check(CLI::ExistingFile);
  flags.add_to(fine);
  add_seed(fine);

  auto* split = app.add_subcommand("split", "Seeded train/dev/test split");
  split->add_option("FILE", file, "Corpus file")->required()->check(CLI::ExistingFile);
  split->add_option("--sizes", sizes, "Train,dev,test counts, e.g. 4955,1641,1731")->required();
  split->add_option("--out-dir", out_dir, "Output directory")->required();
  add_seed(split);

  std::string primary, secondary, ratio = "12:1";
  long long total = -1;
  auto* mix = app.add_subcommand("mix", "Mix two corpora at a fixed ratio");
  mix->add_option("--primary", primary, "Primary corpus")->required()->check(CLI::ExistingFile);
  mix->add_option("--secondary", secondary, "Secondary corpus")
      ->required()
      ->check(CLI::ExistingFile);
  mix->add_option("--ratio", ratio, "Primary:secondary parts")->capture_default_str();
  mix->add_option("--total", total, "Mixture size (default: use every primary document)")
      ->check(CLI::NonNegativeNumber);
  mix->add_option("--out-dir", out_dir, "Output directory")->required();
  add_seed(mix);

  auto* curve = app.add_subcommand("curve", "Learning-curve snapshots");
  curve->add_option("FILE", file, "Corpus file")->required()->check(CLI::ExistingFile);
  curve->add_option("--sizes", sizes, "Ascending sizes, e.g. 500,1000,2000")->required();
  curve->add_flag("--independent", independent, "Draw each snapshot separately instead of nesting");
  curve->add_option("--out-dir", out_dir, "Output directory")->required();
  add_seed(curve);

  std::vector<std::string> files, labels;
  auto* iaa = app.add_subcommand("iaa", "Pairwise agreement between annotation files");
  iaa->add_option("FILES", files, "Two or more corpus files")
      ->required()
      ->check(CLI::ExistingFile);
  iaa->add_option("--labels", labels, "One label per file (default: file stems)")->delimiter(',');
  flags.add_to(iaa);
  add_seed(iaa);

  std::string registry, dict, input, out, unmatched, id_prefix = "snt";
  auto* templatize = app.add_subcommand("templatize", "Generate AMRs for formulaic sentences");
  templatize->add_option("--registry", registry, "Template registry")
      ->required()
      ->check(CLI::ExistingFile);
  templatize->add_option("--dict", dict, "NE dictionary")->check(CLI::ExistingFile);
  templatize->add_option("--input", input, "Sentences, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  templatize->add_option("--out", out, "Output corpus file")->required();
  templatize->add_option("--unmatched", unmatched, "Unmatched TSV (default: OUT.unmatched.tsv)");
  templatize->add_option("--id-prefix", id_prefix, "Document id prefix")->capture_default_str();
  templatize->add_option("--ne-types", ne_types, "File of extra NE types, one per line")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
    if (!seed_given) seed = default_seed();
    if (*validate) return run_validate(file);
    if (*triples) return run_triples(file, top_triple);
    if (*linearize) return run_linearize(file);
    if (*score) return run_score(pred, ref, flags, seed, per_doc);
    if (*fine) return run_fine(pred, ref, flags, seed, format, label, ne_types);
    if (*split) return run_split(file, sizes, seed, out_dir);
    if (*mix) return run_mix(primary, secondary, ratio, total, seed, out_dir);
    if (*curve) return run_curve(file, sizes, seed, independent, out_dir);
    if (*iaa) return run_iaa(files, labels, flags, seed);
    if (*templatize)
      return run_templatize(registry, dict, input, out, unmatched, id_prefix, ne_types);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Failure& e) {
    std::cerr << "amr-kit: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "amr-kit: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
