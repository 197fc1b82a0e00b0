#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ftl/archive.hpp"
#include "ftl/error.hpp"
#include "ftl/generators.hpp"
#include "ftl/stats.hpp"

using namespace ftl;

namespace {

constexpr int kConnected = 0;
constexpr int kDisconnected = 1;
constexpr int kParse = 2;
constexpr int kFlags = 3;
constexpr int kMismatch = 4;

// Flag problems found after CLI11 is done.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string scheme = "2vft";
  int f = 0;
  std::string seed;
  std::string certificate = "on";
  Vertex source = 0;
  std::int64_t threshold = 0;
  bool parallel = true;
};

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoull(s, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw FlagError(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

BuildSpec make_spec(const Common& c, bool certificate_explicit) {
  auto scheme = parse_scheme(c.scheme);
  if (!scheme) throw FlagError("unknown scheme '" + c.scheme + "'");
  BuildSpec spec;
  spec.scheme = *scheme;
  if ((*scheme == Scheme::fvft) != (c.f != 0)) throw FlagError("--f is required for fvft and only for fvft");
  spec.f = c.f;
  if (c.certificate != "on" && c.certificate != "off") throw FlagError("--certificate takes on or off");
  spec.certificate = c.certificate == "on";
  if (*scheme == Scheme::eft) {
    if (certificate_explicit && spec.certificate) throw FlagError("eft labels the input graph's own edges; use --certificate off");
    spec.certificate = false;
  }
  std::string seed = c.seed;
  if (seed.empty())
    if (const char* env = std::getenv("FTLB_SEED")) seed = env;
  if (randomized(*scheme)) {
    if (seed.empty()) throw FlagError(std::string(scheme_name(*scheme)) + " is randomized: pass --seed or set FTLB_SEED");
    spec.seed = parse_u64(seed, "seed");
  }
  spec.source = c.source;
  if (c.threshold > 0) spec.threshold = c.threshold;
  spec.encode.parallel = c.parallel;
  return spec;
}

Graph read_input(const std::string& path) {
  try {
    return load_graph_file(path);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(0, e.what());
  }
}

std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(static_cast<Vertex>(parse_u64(item, "vertex")));
  return out;
}

std::vector<Edge> parse_edges(const std::string& s) {
  std::vector<Edge> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-');
    if (dash == std::string::npos) throw FlagError("edge faults are written u-v, got '" + item + "'");
    out.push_back({static_cast<Vertex>(parse_u64(item.substr(0, dash), "vertex")),
                   static_cast<Vertex>(parse_u64(item.substr(dash + 1), "vertex"))});
  }
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool with_seed = true) {
  cmd->add_option("--scheme", c.scheme, "1vft | ss2vft | 2vft | eft | fvft");
  cmd->add_option("--f", c.f, "fault budget (fvft)");
  if (with_seed) cmd->add_option("--seed", c.seed, "seed for eft/fvft (falls back to FTLB_SEED)");
  cmd->add_option("--certificate", c.certificate, "on | off");
  cmd->add_option("--source", c.source, "source vertex (ss2vft)");
  cmd->add_option("--threshold", c.threshold, "fvft degree threshold override");
  cmd->add_flag("!--serial", c.parallel, "encode without OpenMP");
}

int cmd_build(const Common& c, bool certificate_explicit, const std::string& input, const std::string& out) {
  BuildSpec spec = make_spec(c, certificate_explicit);
  Graph g = read_input(input);
  auto start = std::chrono::steady_clock::now();
  Archive a = make_archive(g, spec);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto bytes = to_bytes(a);
  std::ofstream o(out, std::ios::binary);
  o.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!o) throw FlagError("cannot write " + out);
  std::size_t max_bits = 0;
  double sum = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    max_bits = std::max(max_bits, a.records[v].size() * 8);
    sum += static_cast<double>(a.records[v].size() * 8);
  }
  std::cout << "n=" << g.n() << " m=" << g.m() << " scheme=" << scheme_name(spec.scheme) << " records=" << a.records.size()
            << " max_label_bits=" << max_bits << " mean_label_bits=" << (g.n() ? sum / g.n() : 0.0)
            << " build_seconds=" << secs << "\n";
  return 0;
}

int cmd_query(const std::string& path, Vertex u, Vertex v, const std::string& fail) {
  ArchiveFile file(path);
  bool eft = file.header().scheme == Scheme::eft;
  std::vector<Vertex> fv = eft ? std::vector<Vertex>{} : parse_vertices(fail);
  std::vector<Edge> fe = eft ? parse_edges(fail) : std::vector<Edge>{};
  bool ok = query(file, u, v, fv, fe);
  std::cout << (ok ? "connected" : "disconnected") << "\n";
  return ok ? kConnected : kDisconnected;
}

// Fault sets for the exhaustive sweep: every set of at most `budget` distinct vertices.
void fault_sets(Vertex n, std::size_t budget, std::vector<Vertex>& cur, Vertex from, std::vector<std::vector<Vertex>>& out) {
  out.push_back(cur);
  if (cur.size() == budget) return;
  for (Vertex x = from; x < n; ++x) {
    cur.push_back(x);
    fault_sets(n, budget, cur, x + 1, out);
    cur.pop_back();
  }
}

int cmd_verify(const Common& c, bool certificate_explicit, const std::string& input, bool exhaustive, std::size_t samples, Vertex cap,
               bool corrupt) {
  BuildSpec spec = make_spec(c, certificate_explicit);
  Graph g = read_input(input);
  const Vertex n = g.n();
  if (exhaustive) {
    Vertex limit = cap;
    if (limit == 0) {
      switch (spec.scheme) {
        case Scheme::vft1: limit = 60; break;
        case Scheme::ss2vft: limit = 40; break;
        case Scheme::vft2: limit = 25; break;
        case Scheme::eft: limit = 16; break;
        case Scheme::fvft: limit = 14; break;
      }
    }
    if (n > limit) throw FlagError("exhaustive verification refused above n=" + std::to_string(limit));
  } else if (samples == 0) {
    throw FlagError("pass --exhaustive or --samples N");
  }
  Archive a = make_archive(g, spec);
  if (corrupt && a.records.size() >= 2) std::swap(a.records[0], a.records[1]);
  Archive back = from_bytes(to_bytes(a));
  LabelSet labels = decode_all(back);
  const ArchiveHeader& h = back.header;

  Coverage cov;
  FvftTrace trace_sum;
  std::size_t queries = 0, mismatches = 0, randomized_queries = 0, randomized_mismatches = 0;
  auto check = [&](Vertex u, Vertex v, const std::vector<Vertex>& fv, const std::vector<Edge>& fe, const ComponentMap& comp) {
    FvftTrace tr;
    bool got = query(labels, h, u, v, fv, fe, &cov, &tr);
    bool expect = comp.connected(u, v);
    ++queries;
    bool rnd = spec.scheme == Scheme::eft || tr.eft_calls > 0;
    randomized_queries += rnd;
    trace_sum.eft_calls += tr.eft_calls;
    trace_sum.high_steps += tr.high_steps;
    if (got != expect) {
      ++mismatches;
      randomized_mismatches += rnd;
      if (mismatches <= 5) {
        std::cerr << "mismatch: u=" << u << " v=" << v << " fail=";
        for (Vertex x : fv) std::cerr << x << ' ';
        for (const Edge& e : fe) std::cerr << e.u << '-' << e.v << ' ';
        std::cerr << "decoded=" << got << " oracle=" << expect << "\n";
      }
    }
  };
  auto edge_oracle = [&](const std::vector<Edge>& fe) {
    std::vector<Edge> keep;
    for (const Edge& e : g.edges())
      if (std::find(fe.begin(), fe.end(), e) == fe.end()) keep.push_back(e);
    return components(Graph(n, keep));
  };
  auto pairs = [&](const std::vector<Vertex>& fv, const std::vector<Edge>& fe, const ComponentMap& comp) {
    if (spec.scheme == Scheme::ss2vft) {
      for (Vertex t = 0; t < n; ++t) check(spec.source, t, fv, fe, comp);
      return;
    }
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) check(u, v, fv, fe, comp);
  };

  if (exhaustive) {
    if (spec.scheme == Scheme::eft) {
      std::vector<std::vector<Edge>> sets = {{}};
      for (std::size_t i = 0; i < g.m(); ++i) {
        sets.push_back({g.edges()[i]});
        for (std::size_t j = i + 1; j < g.m(); ++j) sets.push_back({g.edges()[i], g.edges()[j]});
      }
      for (const auto& fe : sets) pairs({}, fe, edge_oracle(fe));
    } else {
      std::vector<std::vector<Vertex>> sets;
      std::vector<Vertex> cur;
      fault_sets(n, *fault_budget(spec.scheme, spec.f), cur, 0, sets);
      for (const auto& fv : sets) pairs(fv, {}, components(g, fv));
    }
  } else {
    std::mt19937_64 rng(spec.seed ^ 0x7e57ULL);
    for (std::size_t q = 0; q < samples; ++q) {
      Vertex u = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
      Vertex v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
      if (spec.scheme == Scheme::ss2vft) u = spec.source;
      if (spec.scheme == Scheme::eft) {
        std::vector<Edge> fe;
        std::size_t k = g.m() ? rng() % 9 : 0;
        for (std::size_t i = 0; i < k; ++i) fe.push_back(g.edges()[rng() % g.m()]);
        check(u, v, {}, fe, edge_oracle(fe));
      } else {
        std::vector<Vertex> fv;
        std::size_t k = rng() % (*fault_budget(spec.scheme, spec.f) + 1);
        while (fv.size() < k) fv.push_back(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)));
        check(u, v, fv, {}, components(g, fv));
      }
    }
  }

  std::cout << "scheme=" << scheme_name(spec.scheme) << " n=" << n << " m=" << g.m() << " queries=" << queries
            << " mismatches=" << mismatches << "\n";
  if (randomized(spec.scheme)) {
    std::cout << "randomized_queries=" << randomized_queries << " randomized_mismatches=" << randomized_mismatches
              << " empirical_error_rate=" << (randomized_queries ? double(randomized_mismatches) / randomized_queries : 0.0)
              << " exact_mismatches=" << mismatches - randomized_mismatches << "\n";
    if (spec.scheme == Scheme::fvft) std::cout << "high_degree_steps=" << trace_sum.high_steps << " eft_calls=" << trace_sum.eft_calls << "\n";
  }
  for (std::size_t b = 0; b < cov.hits.size(); ++b)
    if (cov.hits[b]) std::cout << "coverage " << kBranchNames[b] << " " << cov.hits[b] << "\n";
  bool exact_wrong = mismatches - randomized_mismatches > 0;
  return exact_wrong ? 1 : 0;
}

std::vector<Vertex> parse_n_list(const std::string& s) {
  auto v = parse_vertices(s);
  if (v.empty()) throw FlagError("--n-list is empty");
  return v;
}

int cmd_stats(const Common& c, bool certificate_explicit, const std::string& family, const std::string& n_list) {
  BuildSpec spec = make_spec(c, certificate_explicit);
  std::cout << csv_header() << "\n";
  std::vector<double> xs, ys;
  for (Vertex n : parse_n_list(n_list)) {
    Graph g = gen::family(family, n, 1000 + static_cast<std::uint64_t>(n));
    SizeStats s = size_stats(g, spec);
    std::cout << csv_row(family, s) << "\n";
    xs.push_back(n);
    ys.push_back(static_cast<double>(std::max<std::size_t>(s.max_bits, 1)));
  }
  if (xs.size() >= 2) std::cerr << "loglog_slope=" << loglog_slope(xs, ys) << "\n";
  return 0;
}

int cmd_bench(const Common& c, bool certificate_explicit, const std::string& family, const std::string& n_list, std::size_t queries) {
  BuildSpec spec = make_spec(c, certificate_explicit);
  std::cout << "scheme,family,n,m,build_serial_seconds,build_parallel_seconds,decode_microseconds\n";
  for (Vertex n : parse_n_list(n_list)) {
    Graph g = gen::family(family, n, 1000 + static_cast<std::uint64_t>(n));
    auto time_build = [&](bool parallel) {
      BuildSpec s = spec;
      s.encode.parallel = parallel;
      auto t0 = std::chrono::steady_clock::now();
      LabelSet l = build_labels(g, s);
      return std::pair(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), std::move(l));
    };
    auto [serial, unused] = time_build(false);
    auto [parallel, labels] = time_build(true);
    ArchiveHeader h = make_archive(g, spec, LabelSet{spec.scheme, {}, {}, {}, {}, {}, {}}).header;
    std::mt19937_64 rng(7);
    std::size_t budget = fault_budget(spec.scheme, spec.f).value_or(4);
    auto t0 = std::chrono::steady_clock::now();
    std::size_t sink = 0;
    for (std::size_t q = 0; q < queries; ++q) {
      Vertex u = spec.scheme == Scheme::ss2vft ? spec.source : static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
      Vertex v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
      std::vector<Vertex> fv;
      std::vector<Edge> fe;
      for (std::size_t i = 0; i < budget; ++i) {
        if (spec.scheme == Scheme::eft) {
          if (g.m()) fe.push_back(g.edges()[rng() % g.m()]);
        } else {
          fv.push_back(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n)));
        }
      }
      sink += query(labels, h, u, v, fv, fe);
    }
    double us = queries ? std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count() / queries : 0;
    std::cout << scheme_name(spec.scheme) << ',' << family << ',' << n << ',' << g.m() << ',' << serial << ',' << parallel << ','
              << us << "\n";
    (void)sink;
    (void)unused;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant connectivity labels: build, query, verify, measure"};
  app.require_subcommand(1);

  Common common;
  std::string input, out, labels, fail, family = "gnp", n_list = "64,128,256,512,1024";
  Vertex u = 0, v = 0, cap = 0;
  bool exhaustive = false, corrupt = false;
  std::size_t samples = 0, queries = 1000;

  auto* build = app.add_subcommand("build", "encode labels into an archive");
  add_common(build, common);
  build->add_option("--input", input, "edge-list file")->required();
  build->add_option("--out", out, "archive path")->required();

  auto* q = app.add_subcommand("query", "answer one query from an archive");
  q->add_option("--labels", labels, "archive path")->required();
  q->add_option("--u", u)->required();
  q->add_option("--v", v)->required();
  q->add_option("--fail", fail, "X,Y,... (vertices) or a-b,c-d (edges, eft)");

  auto* verify = app.add_subcommand("verify", "compare decoded answers with the oracle");
  add_common(verify, common);
  verify->add_option("--input", input)->required();
  auto* ex = verify->add_flag("--exhaustive", exhaustive);
  auto* sm = verify->add_option("--samples", samples);
  ex->excludes(sm);
  verify->add_option("--cap", cap, "largest n for --exhaustive");
  verify->add_flag("--corrupt", corrupt, "swap two label records first (harness check)");

  auto* stats = app.add_subcommand("stats", "label sizes as CSV");
  add_common(stats, common);
  stats->add_option("--family", family, "gnp | cycle | grid | wheel");
  stats->add_option("--n-list", n_list);

  auto* bench = app.add_subcommand("bench", "build and decode timings as CSV");
  add_common(bench, common);
  bench->add_option("--family", family, "gnp | cycle | grid | wheel");
  bench->add_option("--n-list", n_list);
  bench->add_option("--queries", queries);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFlags;
  }

  auto explicit_cert = [&](CLI::App* cmd) { return cmd->count("--certificate") > 0; };
  try {
    if (*build) return cmd_build(common, explicit_cert(build), input, out);
    if (*q) return cmd_query(labels, u, v, fail);
    if (*verify) return cmd_verify(common, explicit_cert(verify), input, exhaustive, samples, cap, corrupt);
    if (*stats) return cmd_stats(common, explicit_cert(stats), family, n_list);
    if (*bench) return cmd_bench(common, explicit_cert(bench), family, n_list, queries);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFlags;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFlags;
  } catch (const LabelError& e) {
    std::cerr << "label error: " << e.what() << "\n";
    return kMismatch;
  }
  return kFlags;
}
