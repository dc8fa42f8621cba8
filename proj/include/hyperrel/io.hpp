#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyperrel/common.hpp"
#include "hyperrel/hypergraph.hpp"

namespace hyperrel {

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Parse the hMETIS-style text format: '%' comment lines, a header line
/// "m n" (edge count then vertex count), then m lines of 1-indexed vertex
/// ids. Tokens are separated by runs of spaces or tabs; LF and CRLF line
/// endings are both accepted.
inline Hypergraph parse_hypergraph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> data_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '%')
      data_lines.emplace_back(line_no, line);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }

  if (data_lines.empty()) throw ParseError(line_no, "missing header line");
  auto header = detail::split_tokens(data_lines[0].second);
  if (header.size() != 2)
    throw ParseError(data_lines[0].first, "header must be two counts: edges vertices");
  std::uint64_t m = detail::parse_count(header[0], data_lines[0].first, "edge count");
  std::uint64_t n = detail::parse_count(header[1], data_lines[0].first, "vertex count");
  if (n == 0) throw ParseError(data_lines[0].first, "vertex count must be positive");
  if (data_lines.size() - 1 != m)
    throw ParseError(data_lines.back().first,
                     "expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(data_lines.size() - 1));

  std::vector<Hypergraph::Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i < data_lines.size(); ++i) {
    const auto [lno, line] = data_lines[i];
    auto toks = detail::split_tokens(line);
    if (toks.empty()) throw ParseError(lno, "empty hyperedge");
    Hypergraph::Edge edge;
    edge.reserve(toks.size());
    for (auto tok : toks) {
      std::uint64_t v = detail::parse_count(tok, lno, "vertex id");
      if (v == 0 || v > n)
        throw ParseError(lno, "vertex id " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(n));
      edge.push_back(static_cast<std::uint32_t>(v - 1));
    }
    Hypergraph::Edge sorted = edge;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(lno, "duplicate vertex within a hyperedge");
    edges.push_back(std::move(edge));
  }
  return Hypergraph(static_cast<std::uint32_t>(n), std::move(edges));
}

inline std::string serialize_hypergraph(const Hypergraph& g) {
  std::ostringstream out;
  out << g.num_edges() << ' ' << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out << ' ';
      out << e[i] + 1;
    }
    out << '\n';
  }
  return out.str();
}

/// Built-in instance generators, all deterministic for a fixed seed.
struct InstanceSpec {
  enum class Kind { CompleteGraph, RandomUniform, Sunflower, PlantedCut, FromFile };
  Kind kind = Kind::CompleteGraph;
  std::vector<std::uint64_t> params;
  std::uint64_t seed = 0;
  std::string path;  // FromFile only
};

/// Grammar: "complete-graph:N", "sunflower:N", "random-uniform:N,M,RANK",
/// "planted-cut:N,K,INSIDE_M,CROSS_M", or "file:PATH".
inline InstanceSpec parse_instance_spec(std::string_view text) {
  std::size_t colon = text.find(':');
  std::string_view kind = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  InstanceSpec spec;
  if (kind == "file") {
    spec.kind = InstanceSpec::Kind::FromFile;
    spec.path = std::string(rest);
    if (spec.path.empty()) throw std::invalid_argument("file: spec needs a path");
    return spec;
  }

  std::size_t expected_params = 0;
  if (kind == "complete-graph") {
    spec.kind = InstanceSpec::Kind::CompleteGraph;
    expected_params = 1;
  } else if (kind == "sunflower") {
    spec.kind = InstanceSpec::Kind::Sunflower;
    expected_params = 1;
  } else if (kind == "random-uniform") {
    spec.kind = InstanceSpec::Kind::RandomUniform;
    expected_params = 3;
  } else if (kind == "planted-cut") {
    spec.kind = InstanceSpec::Kind::PlantedCut;
    expected_params = 4;
  } else {
    throw std::invalid_argument("unknown generator '" + std::string(kind) + "'");
  }

  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t comma = rest.find(',', pos);
    std::string_view tok =
        comma == std::string_view::npos ? rest.substr(pos) : rest.substr(pos, comma - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad generator parameter '" + std::string(tok) + "'");
    spec.params.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (spec.params.size() != expected_params)
    throw std::invalid_argument("generator '" + std::string(kind) + "' needs " +
                                std::to_string(expected_params) + " parameters");
  for (std::uint64_t v : spec.params)
    if (v == 0) throw std::invalid_argument("generator parameters must be positive");
  return spec;
}

namespace detail {

inline Hypergraph gen_complete_graph(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("complete-graph needs n >= 2");
  std::vector<Hypergraph::Edge> edges;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) edges.push_back({a, b});
  return Hypergraph(n, std::move(edges));
}

/// The extreme family for contraction-based estimators: n edges of rank
/// n-1, one omitting each vertex, with minimum cut n-1.
inline Hypergraph gen_sunflower(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("sunflower needs n >= 3");
  std::vector<Hypergraph::Edge> edges;
  for (std::uint32_t skip = 0; skip < n; ++skip) {
    Hypergraph::Edge e;
    for (std::uint32_t v = 0; v < n; ++v)
      if (v != skip) e.push_back(v);
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

inline Hypergraph::Edge random_subset(std::uint32_t n, std::uint32_t k, Rng& rng) {
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  Hypergraph::Edge edge;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(uniform01(rng) * (n - i));
    std::swap(pool[i], pool[j]);
    edge.push_back(pool[i]);
  }
  return edge;
}

inline Hypergraph gen_random_uniform(std::uint32_t n, std::uint32_t m, std::uint32_t rank,
                                     std::uint64_t seed) {
  if (rank < 2) throw std::invalid_argument("random-uniform needs rank >= 2");
  if (rank > n) throw std::invalid_argument("random-uniform needs rank <= n");
  Rng rng = make_rng(derive_seed(seed, 0x5eed));
  std::vector<Hypergraph::Edge> edges;
  for (std::uint32_t i = 0; i < m; ++i) edges.push_back(random_subset(n, rank, rng));
  return Hypergraph(n, std::move(edges));
}

/// Two vertex groups [0,k) and [k,n) joined by cross_m rank-2 edges; each
/// group first receives a random spanning tree (while the inside budget
/// lasts), then extra random inside pairs.
inline Hypergraph gen_planted_cut(std::uint32_t n, std::uint32_t k, std::uint32_t inside_m,
                                  std::uint32_t cross_m, std::uint64_t seed) {
  if (k >= n) throw std::invalid_argument("planted-cut needs k < n");
  if (k < 2 || n - k < 2) throw std::invalid_argument("planted-cut groups need >= 2 vertices");
  Rng rng = make_rng(derive_seed(seed, 0xc17));
  std::vector<Hypergraph::Edge> edges;
  std::uint32_t budget = inside_m;
  auto add_group = [&](std::uint32_t lo, std::uint32_t hi) {
    for (std::uint32_t v = lo + 1; v < hi && budget > 0; ++v, --budget) {
      std::uint32_t parent = lo + static_cast<std::uint32_t>(uniform01(rng) * (v - lo));
      edges.push_back({std::min(parent, v), std::max(parent, v)});
    }
  };
  add_group(0, k);
  add_group(k, n);
  while (budget > 0) {
    bool left = bernoulli(rng, 0.5);
    std::uint32_t lo = left ? 0 : k, hi = left ? k : n;
    std::uint32_t a = lo + static_cast<std::uint32_t>(uniform01(rng) * (hi - lo));
    std::uint32_t b = lo + static_cast<std::uint32_t>(uniform01(rng) * (hi - lo));
    if (a == b) continue;
    edges.push_back({std::min(a, b), std::max(a, b)});
    --budget;
  }
  for (std::uint32_t i = 0; i < cross_m; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(uniform01(rng) * k);
    std::uint32_t b = k + static_cast<std::uint32_t>(uniform01(rng) * (n - k));
    edges.push_back({a, b});
  }
  return Hypergraph(n, std::move(edges));
}

}  // namespace detail

inline Hypergraph generate(const InstanceSpec& spec, std::uint64_t seed) {
  using Kind = InstanceSpec::Kind;
  switch (spec.kind) {
    case Kind::CompleteGraph:
      return detail::gen_complete_graph(static_cast<std::uint32_t>(spec.params[0]));
    case Kind::Sunflower:
      return detail::gen_sunflower(static_cast<std::uint32_t>(spec.params[0]));
    case Kind::RandomUniform:
      return detail::gen_random_uniform(static_cast<std::uint32_t>(spec.params[0]),
                                        static_cast<std::uint32_t>(spec.params[1]),
                                        static_cast<std::uint32_t>(spec.params[2]), seed);
    case Kind::PlantedCut:
      return detail::gen_planted_cut(static_cast<std::uint32_t>(spec.params[0]),
                                     static_cast<std::uint32_t>(spec.params[1]),
                                     static_cast<std::uint32_t>(spec.params[2]),
                                     static_cast<std::uint32_t>(spec.params[3]), seed);
    case Kind::FromFile:
      throw std::invalid_argument("file-backed specs are loaded by the caller");
  }
  throw std::invalid_argument("unknown generator kind");
}

inline Hypergraph generate(const InstanceSpec& spec) { return generate(spec, spec.seed); }

/// Flat run summary emitted by the CLI; serializes to a single JSON object
/// with a fixed key order so reports with equal content are byte-identical.
struct RunReport {
  double estimate = 0.0;
  std::string algorithm;
  double p = 0.0;
  std::optional<double> delta;
  std::optional<double> epsilon;  // amplifier target, not serialized
  std::uint64_t seed = 0;
  std::string profile;
  double elapsed_ms = 0.0;
  std::uint64_t recursion_calls = 0;
  std::uint64_t samples_used = 0;
};

inline std::string to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["estimate"] = r.estimate;
  j["algorithm"] = r.algorithm;
  j["p"] = r.p;
  if (r.delta)
    j["delta"] = *r.delta;
  else
    j["delta"] = nullptr;
  j["seed"] = r.seed;
  j["profile"] = r.profile;
  j["elapsed_ms"] = r.elapsed_ms;
  j["recursion_calls"] = r.recursion_calls;
  j["samples_used"] = r.samples_used;
  return j.dump();
}

inline RunReport run_report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RunReport r;
  r.estimate = j.at("estimate").get<double>();
  r.algorithm = j.at("algorithm").get<std::string>();
  r.p = j.at("p").get<double>();
  if (!j.at("delta").is_null()) r.delta = j.at("delta").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.profile = j.at("profile").get<std::string>();
  r.elapsed_ms = j.at("elapsed_ms").get<double>();
  r.recursion_calls = j.at("recursion_calls").get<std::uint64_t>();
  r.samples_used = j.at("samples_used").get<std::uint64_t>();
  return r;
}

}  // namespace hyperrel
