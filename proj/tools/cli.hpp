#pragma once

// cyclic-pda command line. Also linked into the tests, which drive it
// in-process through run().

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpda/cpda.hpp"

namespace cpda::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kResourceGuard = 3,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  file << text;
}

inline SystemParams parse_params_triple(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParameterError("--params expects K,L,gamma, got '" + text + "'");
    }
  }
  if (v.size() != 3) throw ParameterError("--params expects K,L,gamma, got '" + text + "'");
  return validate(v[0], v[1], v[2]);
}

}  // namespace detail

struct ConstructOptions {
  int K = 0;
  int L = 0;
  int gamma = 0;
  std::string format = "grid";
  std::string out;
};

inline int cmd_construct(const ConstructOptions& o, std::ostream& out, std::ostream& err) {
  const auto p = validate(o.K, o.L, o.gamma);
  const auto scheme = build_scheme(p);
  const std::string text =
      o.format == "json-record" ? to_record(scheme.pda) : to_grid(scheme.pda);
  detail::write_output(o.out, text, out);
  (o.out.empty() ? err : out) << scheme.summary() << "\n";
  return kOk;
}

struct VerifyOptions {
  std::string in;
  std::string params;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  Pda pda = parse(detail::read_file(o.in));
  const auto result = verify(pda);
  if (!result) {
    for (const auto& v : result.violations()) err << v.str() << "\n";
    return kVerifyFailed;
  }
  const auto& st = result.stats();
  out << "verified " << st.tuple() << " PDA, R=" << to_string(st.rate)
      << ", Z/F=" << to_string(st.memory_ratio) << ", g_min=" << st.g_min
      << ", g_max=" << st.g_max << (st.regular ? ", regular" : ", irregular") << "\n";
  if (!o.params.empty()) {
    const auto p = detail::parse_params_triple(o.params);
    try {
      pda = assume_construction_rows(pda, p);
      if (!verify_against_placement(pda, p)) {
        err << "star pattern does not match the consecutive cyclic placement for K=" << p.K
            << ", L=" << p.L << ", gamma=" << p.gamma << "\n";
        return kVerifyFailed;
      }
    } catch (const ShapeError& e) {
      err << "shape error: " << e.what() << "\n";
      return kVerifyFailed;
    }
    out << "star pattern matches the consecutive cyclic placement (K=" << p.K
        << ", L=" << p.L << ", gamma=" << p.gamma << ", t=" << p.t << ")\n";
  }
  return kOk;
}

struct BoundsOptions {
  int K = 0;
  int L = 0;
  int gamma = 0;
  bool sweep = false;
};

inline constexpr std::string_view kBoundsCsvHeader =
    "gamma,t,case,g_star,r_star_num,r_star_den,g_achieved,r_new_num,r_new_den,f_new,gap";

inline int cmd_bounds(const BoundsOptions& o, std::ostream& out, std::ostream&) {
  auto line = [](const SystemParams& p) {
    const auto b = g_star(p.K, p.t);
    const int achieved = claimed_gain(p.K, p.t);
    const auto r = rate_closed_form(p.K, p.t);
    return std::pair{b, std::pair{achieved, r}};
  };
  if (o.sweep) {
    validate(o.K, o.L, 0);
    out << kBoundsCsvHeader << "\n";
    for (int gamma = 0; gamma <= o.K / o.L; ++gamma) {
      const auto p = validate(o.K, o.L, gamma);
      const auto [b, ach] = line(p);
      out << gamma << "," << p.t << "," << to_string(classify(p)) << "," << b.g_star << ","
          << b.r_star.numerator() << "," << b.r_star.denominator() << "," << ach.first << ","
          << ach.second.numerator() << "," << ach.second.denominator() << ","
          << subpacketization_closed_form(p.K, p.t) << "," << (b.g_star - ach.first) << "\n";
    }
    return kOk;
  }
  const auto p = validate(o.K, o.L, o.gamma);
  const auto [b, ach] = line(p);
  out << "K=" << p.K << " L=" << p.L << " gamma=" << p.gamma << " t=" << p.t
      << " case=" << to_string(classify(p)) << "\n";
  out << "g*=" << b.g_star << " R*=" << to_string(b.r_star) << " (" << to_string(b.branch)
      << " branch)\n";
  out << "achieved g=" << ach.first << " R=" << to_string(ach.second)
      << " F=" << subpacketization_closed_form(p.K, p.t) << "\n";
  out << "gap " << (b.g_star - ach.first) << "\n";
  return kOk;
}

struct SimulateOptions {
  int K = 0;
  int L = 0;
  int gamma = 0;
  int files = 0;
  std::string demand = "worst";
  std::uint64_t seed = 1;
  std::size_t bytes = 64;
  std::string transcript;
};

inline int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  const auto p = validate(o.K, o.L, o.gamma, o.files);
  std::vector<int> demand;
  if (o.demand == "worst") {
    demand = worst_case_demand(p.K, p.N);
  } else if (o.demand == "equal") {
    demand = equal_demand(p.K);
  } else {
    demand = random_demand(p.K, p.N, o.seed);
  }
  const auto scheme = build_scheme(p);
  const auto idx = index_symbols(scheme.pda);
  const auto store = FileStore::random(p.N, scheme.pda.F(), o.bytes, o.seed);
  const auto caches = place(p, scheme.pda, store);
  if (!o.transcript.empty()) {
    detail::write_output(o.transcript, deliver(p, idx, store, demand).dump(), out);
  }
  const auto rep = run_delivery(p, scheme.pda, idx, store, caches, demand);
  out << "demand";
  for (int d : demand) out << " " << d;
  out << "\n";
  out << "messages " << rep.messages << ", bytes sent " << rep.bytes_sent << ", file size "
      << rep.file_size << "\n";
  out << "node memory " << rep.max_node_bytes << " of " << rep.library_bytes
      << " library bytes\n";
  if (!rep.all_decoded()) {
    for (const auto& f : rep.failures) err << f << "\n";
    out << rep.users_decoded << " of " << p.K << " users decoded; bytes = "
        << to_string(rep.load) << " x file size\n";
    return kVerifyFailed;
  }
  out << "all " << p.K << " users decoded; bytes = " << to_string(rep.load)
      << " x file size (R_new=" << to_string(scheme.rate) << ")\n";
  return kOk;
}

struct SearchGainOptions {
  int K = 0;
  int t = 0;
  std::optional<int> max_K_override;
};

inline int cmd_search_gain(const SearchGainOptions& o, std::ostream& out, std::ostream&) {
  SearchLimits limits;
  if (const char* env = std::getenv(kOracleMaxKEnv)) limits.max_K = std::atoi(env);
  if (o.max_K_override) limits.max_K = *o.max_K_override;
  const auto res = max_single_symbol_gain(o.K, o.t, limits);
  const auto bound = g_star(o.K, o.t);
  out << "K=" << o.K << " t=" << o.t << " case=" << to_string(classify(o.K, o.t)) << "\n";
  out << "g_max=" << res.g_max << " g*=" << bound.g_star
      << (res.g_max == bound.g_star ? " (equal)" : res.g_max < bound.g_star ? " (below)" : " (ABOVE BOUND)")
      << "\n";
  out << "witness";
  for (const auto& [j, k] : res.witness) out << " (" << j << "," << k << ")";
  out << "\n";
  out << "nodes explored " << res.nodes_explored << "\n";
  return res.g_max <= bound.g_star ? kOk : kVerifyFailed;
}

struct CompareOptions {
  int K = 0;
  int L = 0;
  std::optional<int> gamma_min;
  std::optional<int> gamma_max;
  std::string out;
};

inline int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream&) {
  validate(o.K, o.L, 0);
  const auto rows = compare_table(o.K, o.L, o.gamma_min.value_or(0),
                                  o.gamma_max.value_or(o.K / o.L));
  detail::write_output(o.out, to_csv(rows), out);
  return kOk;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Placement delivery arrays for cyclic multi-access coded caching",
               "cyclic-pda"};
  app.require_subcommand(1);

  ConstructOptions construct;
  auto* c = app.add_subcommand("construct", "build the delivery array for (K, L, gamma)");
  c->add_option("--K", construct.K, "users and cache nodes")->required();
  c->add_option("--L", construct.L, "nodes per user")->required();
  c->add_option("--gamma", construct.gamma, "node memory M = gamma N / K")->required();
  c->add_option("--format", construct.format)->check(CLI::IsMember({"grid", "json-record"}));
  c->add_option("--out", construct.out, "write the array here instead of stdout");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "check an array file against the PDA conditions");
  v->add_option("--in", ver.in, "grid or json-record file")->required();
  v->add_option("--params", ver.params, "K,L,gamma: also check the cyclic star pattern");

  BoundsOptions bnd;
  auto* b = app.add_subcommand("bounds", "optimal gain bound versus the achieved gain");
  b->add_option("--K", bnd.K)->required();
  b->add_option("--L", bnd.L)->required();
  b->add_option("--gamma", bnd.gamma);
  b->add_flag("--sweep", bnd.sweep, "CSV over every gamma");

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "byte-level placement, delivery and decoding");
  s->add_option("--K", sim.K)->required();
  s->add_option("--L", sim.L)->required();
  s->add_option("--gamma", sim.gamma)->required();
  s->add_option("--files", sim.files, "number of files N (default K)");
  s->add_option("--demand", sim.demand)->check(CLI::IsMember({"worst", "equal", "random"}));
  s->add_option("--seed", sim.seed);
  s->add_option("--bytes", sim.bytes, "subpacket size B")->check(CLI::PositiveNumber);
  s->add_option("--transcript", sim.transcript, "dump the delivery transcript here");

  SearchGainOptions sg;
  auto* g = app.add_subcommand("search-gain", "exhaustive single-symbol gain search");
  g->add_option("--K", sg.K)->required();
  g->add_option("--t", sg.t)->required();
  g->add_option("--max-K-override", sg.max_K_override, "raise the K cap of the search");

  CompareOptions cmp;
  auto* m = app.add_subcommand("compare", "CSV of rates and subpacketizations per gamma");
  m->add_option("--K", cmp.K)->required();
  m->add_option("--L", cmp.L)->required();
  m->add_option("--gamma-min", cmp.gamma_min);
  m->add_option("--gamma-max", cmp.gamma_max);
  m->add_option("--out", cmp.out, "write CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*c) return cmd_construct(construct, out, err);
    if (*v) return cmd_verify(ver, out, err);
    if (*b) return cmd_bounds(bnd, out, err);
    if (*s) return cmd_simulate(sim, out, err);
    if (*g) return cmd_search_gain(sg, out, err);
    if (*m) return cmd_compare(cmp, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const ResourceGuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}

}  // namespace cpda::cli
