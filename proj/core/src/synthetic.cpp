// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The symtax Authors

#include "symtax/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "symtax/common.hpp"

namespace symtax {

namespace {

struct CategorySeed {
  const char* label;
  const char* name;
  std::vector<const char*> acm;
};

const std::vector<CategorySeed>& category_table() {
  static const std::vector<CategorySeed> table = {
      {"cs.CV", "Computer Vision and Pattern Recognition", {"I.2.10", "I.4", "I.5"}},
      {"cs.LG", "Machine Learning", {"I.2.6"}},
      {"cs.CL", "Computation and Language", {"I.2.7"}},
      {"cs.IR", "Information Retrieval", {"H.3.3"}},
      {"cs.DB", "Databases", {"H.2"}},
      {"cs.CR", "Cryptography and Security", {"D.4.6", "K.6.5"}},
      {"cs.NI", "Networking and Internet Architecture", {"C.2"}},
      {"cs.DS", "Data Structures and Algorithms", {"E.1", "F.2"}},
  };
  return table;
}

struct AcmSeed {
  const char* id;
  const char* name;
  const char* parent;
};

const std::vector<AcmSeed>& acm_table() {
  static const std::vector<AcmSeed> table = {
      {"C", "Computer Systems Organization", nullptr},
      {"C.2", "Computer-Communication Networks", "C"},
      {"D", "Software", nullptr},
      {"D.4", "Operating Systems", "D"},
      {"D.4.6", "Security and Protection", "D.4"},
      {"E", "Data", nullptr},
      {"E.1", "Data Structures", "E"},
      {"F", "Theory of Computation", nullptr},
      {"F.2", "Analysis of Algorithms and Problem Complexity", "F"},
      {"H", "Information Systems", nullptr},
      {"H.2", "Database Management", "H"},
      {"H.3", "Information Storage and Retrieval", "H"},
      {"H.3.3", "Information Search and Retrieval", "H.3"},
      {"I", "Computing Methodologies", nullptr},
      {"I.2", "Artificial Intelligence", "I"},
      {"I.2.6", "Learning", "I.2"},
      {"I.2.7", "Natural Language Processing", "I.2"},
      {"I.2.10", "Vision and Scene Understanding", "I.2"},
      {"I.4", "Image Processing and Computer Vision", "I"},
      {"I.5", "Pattern Recognition", "I"},
      {"K", "Computing Milieux", nullptr},
      {"K.6", "Management of Computing and Information Systems", "K"},
      {"K.6.5", "Security and Protection", "K.6"},
  };
  return table;
}

class WordFactory {
 public:
  explicit WordFactory(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static constexpr std::string_view kOnset = "bdfghklmnprstvz";
    static constexpr std::string_view kVowel = "aeiou";
    for (;;) {
      std::string w;
      const std::size_t syllables = 2 + static_cast<std::size_t>(rng_.below(2));
      for (std::size_t s = 0; s < syllables; ++s) {
        w += kOnset[rng_.below(kOnset.size())];
        w += kVowel[rng_.below(kVowel.size())];
      }
      if (seen_.insert(w).second) return w;
    }
  }

  std::vector<std::string> take(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(next());
    return out;
  }

 private:
  Rng rng_;
  std::set<std::string> seen_;
};

const std::string& pick(const std::vector<std::string>& words, Rng& rng) {
  return words[rng.below(words.size())];
}

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string join_sentence(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += out.empty() ? capitalized(w) : w;
  }
  out += '.';
  return out;
}

std::string padded(char prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
  return buf;
}

struct Generator {
  const SyntheticSpec& spec;
  std::vector<std::string> generic;
  std::vector<std::vector<std::string>> own;    // per cluster
  std::vector<std::vector<std::string>> topic;  // per topic group
  std::vector<std::vector<std::string>> signature;

  std::size_t topic_of(std::size_t cluster) const { return cluster / spec.clusters_per_topic; }

  const std::string& content_word(std::size_t cluster, Rng& rng) const {
    return rng.bernoulli(spec.own_word_fraction) ? pick(own[cluster], rng) : pick(topic[topic_of(cluster)], rng);
  }
};

std::string category_label(std::size_t cluster) {
  const auto& table = category_table();
  if (cluster < table.size()) return table[cluster].label;
  return "syn.c" + std::to_string(cluster);
}

std::pair<std::string, std::string> taxonomy_files(std::size_t n_clusters) {
  const auto& table = category_table();
  nlohmann::json tree = nlohmann::json::object();
  for (const auto& a : acm_table()) {
    tree[a.id] = {{"name", a.name}, {"parent", a.parent ? nlohmann::json(a.parent) : nlohmann::json(nullptr)}};
  }
  nlohmann::json mapping = nlohmann::json::object();
  bool extra = false;
  for (std::size_t c = 0; c < n_clusters; ++c) {
    if (c < table.size()) {
      std::vector<std::string> acm(table[c].acm.begin(), table[c].acm.end());
      mapping[table[c].label] = {{"name", table[c].name}, {"acm", acm}};
    } else {
      extra = true;
      const std::string node = "Z." + std::to_string(c);
      tree[node] = {{"name", "Synthetic Topic " + std::to_string(c)}, {"parent", "Z"}};
      mapping[category_label(c)] = {{"name", "Synthetic Class " + std::to_string(c)},
                                    {"acm", std::vector<std::string>{node}}};
    }
  }
  if (extra) tree["Z"] = {{"name", "Synthetic Topics"}, {"parent", nullptr}};
  return {mapping.dump(2) + "\n", tree.dump(2) + "\n"};
}

}  // namespace

void validate(const SyntheticSpec& s) {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must be in [0, 1]");
  };
  prob(s.own_word_fraction, "own_word_fraction");
  prob(s.intra_cluster_probability, "intra_cluster_probability");
  prob(s.chain_probability, "chain_probability");
  prob(s.signature_probability, "signature_probability");
  if (s.n_clusters == 0 || s.papers_per_cluster == 0 || s.vocab_per_cluster == 0 ||
      s.generic_vocab == 0 || s.clusters_per_topic == 0) {
    throw ValidationError("synthetic sizes must be positive");
  }
  if (s.min_references > s.max_references) throw ValidationError("min_references exceeds max_references");
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  const std::size_t k = spec.n_clusters;
  const std::size_t n = k * spec.papers_per_cluster;
  const std::size_t n_topics = (k + spec.clusters_per_topic - 1) / spec.clusters_per_topic;

  Generator g{spec, {}, {}, {}, {}};
  WordFactory words(derive_seed(spec.seed, "synth.vocab"));
  g.generic = words.take(spec.generic_vocab);
  for (std::size_t c = 0; c < k; ++c) g.own.push_back(words.take(spec.vocab_per_cluster));
  for (std::size_t t = 0; t < n_topics; ++t) g.topic.push_back(words.take(spec.vocab_per_cluster));
  for (std::size_t i = 0; i < n; ++i) g.signature.push_back(words.take(2));

  SyntheticCorpus out;
  Rng layout(derive_seed(spec.seed, "synth.layout"));
  out.cluster.reserve(n);
  for (std::size_t c = 0; c < k; ++c) out.cluster.insert(out.cluster.end(), spec.papers_per_cluster, c);
  layout.shuffle(out.cluster);

  // Zipf popularity: within each cluster a random permutation assigns rank r
  // and weight 1 / (r + 1).
  std::vector<double> weight(n);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (out.cluster[i] == c) members.push_back(i);
    }
    layout.shuffle(members);
    for (std::size_t r = 0; r < members.size(); ++r) weight[members[r]] = 1.0 / static_cast<double>(r + 1);
  }

  Rng text(derive_seed(spec.seed, "synth.text"));
  const int id_width = n < 10000 ? 4 : 8;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = out.cluster[i];
    Paper p;
    p.id = padded('S', i, id_width);
    p.category = category_label(c);
    std::vector<std::string> title{g.signature[i][0], g.content_word(c, text), g.content_word(c, text),
                                   pick(g.generic, text), g.content_word(c, text)};
    p.title = join_sentence(title);
    p.title.pop_back();
    std::string abstract;
    for (std::size_t s = 0; s < 4; ++s) {
      std::vector<std::string> sentence;
      for (std::size_t w = 0; w < 9; ++w) {
        sentence.push_back(text.bernoulli(0.55) ? g.content_word(c, text) : pick(g.generic, text));
      }
      if (s < 2) sentence.push_back(g.signature[i][s]);
      if (!abstract.empty()) abstract += ' ';
      abstract += join_sentence(sentence);
    }
    p.abstract = std::move(abstract);
    char date[16];
    std::snprintf(date, sizeof date, "%04zu-%02zu-01", 2000 + i / 12 % 100, i % 12 + 1);
    p.pub_date = date;
    out.papers.push_back(std::move(p));
  }

  // Citations point from later to earlier papers.
  Rng cite(derive_seed(spec.seed, "synth.citations"));
  std::vector<std::vector<std::size_t>> refs(n);
  std::vector<std::vector<std::size_t>> by_cluster(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = out.cluster[i];
    const std::size_t want = std::min(
        i, spec.min_references + static_cast<std::size_t>(cite.below(spec.max_references - spec.min_references + 1)));
    auto& mine = refs[i];
    for (std::size_t attempt = 0; mine.size() < want && attempt < 8 * want + 8; ++attempt) {
      std::size_t chosen = n;
      if (!mine.empty() && cite.bernoulli(spec.chain_probability)) {
        const auto& via = refs[mine[cite.below(mine.size())]];
        std::vector<std::size_t> options;
        for (std::size_t r : via) {
          if (std::find(mine.begin(), mine.end(), r) == mine.end()) options.push_back(r);
        }
        std::sort(options.begin(), options.end());
        if (!options.empty()) chosen = options[cite.below(options.size())];
      } else {
        std::size_t target = c;
        if (k > 1 && !cite.bernoulli(spec.intra_cluster_probability)) {
          target = (c + 1 + static_cast<std::size_t>(cite.below(k - 1))) % k;
        }
        const auto& pool = by_cluster[target];
        double total = 0.0;
        for (std::size_t j : pool) {
          if (std::find(mine.begin(), mine.end(), j) == mine.end()) total += weight[j];
        }
        if (total > 0.0) {
          double u = cite.uniform() * total;
          for (std::size_t j : pool) {
            if (std::find(mine.begin(), mine.end(), j) != mine.end()) continue;
            chosen = j;
            u -= weight[j];
            if (u < 0.0) break;
          }
        }
      }
      if (chosen != n) mine.push_back(chosen);
    }
    by_cluster[c].push_back(i);
  }

  static const std::vector<std::string> kSections = {"Introduction", "Related Work", "Method", "Experiments"};
  Rng ctx(derive_seed(spec.seed, "synth.contexts"));
  std::size_t next_context = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = out.cluster[i];
    for (std::size_t j : refs[i]) {
      const std::size_t cj = out.cluster[j];
      std::vector<std::string> before, cite_sentence, after;
      for (std::size_t w = 0; w < 8; ++w) {
        before.push_back(ctx.bernoulli(0.5) ? g.content_word(c, ctx) : pick(g.generic, ctx));
        after.push_back(ctx.bernoulli(0.3) ? g.content_word(c, ctx) : pick(g.generic, ctx));
      }
      for (std::size_t w = 0; w < 10; ++w) {
        cite_sentence.push_back(ctx.bernoulli(0.6) ? g.content_word(cj, ctx) : pick(g.generic, ctx));
      }
      if (ctx.bernoulli(spec.signature_probability)) {
        cite_sentence.insert(cite_sentence.begin() + static_cast<std::ptrdiff_t>(ctx.below(cite_sentence.size())),
                             g.signature[j][ctx.below(2)]);
      }
      CitationContext cc;
      cc.context_id = padded('C', next_context++, 6);
      cc.citing_id = out.papers[i].id;
      cc.cited_id = out.papers[j].id;
      cc.text = join_sentence(before) + " " + join_sentence(cite_sentence) + " " + join_sentence(after);
      cc.section_heading = kSections[ctx.below(kSections.size())];
      out.contexts.push_back(std::move(cc));
    }
  }

  std::tie(out.mapping_json, out.acm_tree_json) = taxonomy_files(k);
  return out;
}

void write_synthetic(const SyntheticCorpus& corpus, const std::string& dir) {
  const std::filesystem::path base(dir);
  if (!std::filesystem::is_directory(base)) throw MissingArtifactError(dir);
  write_file((base / "papers.jsonl").string(), to_jsonl(corpus.papers));
  write_file((base / "contexts.jsonl").string(), to_jsonl(corpus.contexts));
  write_file((base / "mapping.json").string(), corpus.mapping_json);
  write_file((base / "acm_tree.json").string(), corpus.acm_tree_json);
}

}  // namespace symtax
