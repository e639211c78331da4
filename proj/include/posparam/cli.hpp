// Copyright 2026 The posparam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. `run` holds the whole tool so tests can drive it
// with in-memory streams.
//
// Exit codes: 0 success, 1 domain error, 2 usage error or malformed input.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "posparam/errors.hpp"
#include "posparam/jacobi.hpp"
#include "posparam/json_io.hpp"
#include "posparam/matcore.hpp"
#include "posparam/qstate.hpp"
#include "posparam/sc.hpp"
#include "posparam/separable.hpp"

namespace posparam::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

namespace detail {

using io::FormatError;
using io::Json;

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(what + ": cannot read '" + s + "' as a number");
  }
}

/// "re" or "re,im".
inline Complex parse_complex(const std::string& s, const std::string& what) {
  const std::vector<std::string> parts = split(s, ',');
  if (parts.size() == 1) return {parse_double(parts[0], what), 0.0};
  if (parts.size() == 2) return {parse_double(parts[0], what), parse_double(parts[1], what)};
  throw FormatError(what + ": expected re or re,im");
}

inline std::vector<std::size_t> parse_counts(const std::string& s, const std::string& what) {
  std::vector<std::size_t> out;
  for (const std::string& p : split(s, ',')) {
    const double v = parse_double(p, what);
    if (v < 0.0 || v != std::floor(v)) throw FormatError(what + ": '" + p + "' is not a count");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  const std::vector<std::size_t> d = parse_counts(s, "--dims");
  if (d.size() != 2) throw FormatError("--dims: expected A,B");
  return {d[0], d[1]};
}

struct Context {
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string out_format = "json";
  std::string in_path = "-";
  std::istream* in = nullptr;

  Json read_input() const {
    std::string text;
    if (in_path == "-") {
      text.assign(std::istreambuf_iterator<char>(*in), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(in_path, std::ios::binary);
      if (!f) throw FormatError("cannot open input file '" + in_path + "'");
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    return io::parse(text);
  }
};

/// Parameter objects are recognized by their key; anything else is read as
/// a matrix and extracted first.
inline SCParameters sc_params_or_extract(const Json& j, const Tolerances& tol) {
  if (j.is_object() && j.contains("gammas")) return io::sc_from_json(j);
  return sc_extract(io::matrix_from_json(j), tol);
}

inline JacobiParameters jacobi_params_or_extract(const Json& j, const Tolerances& tol) {
  if (j.is_object() && j.contains("s0") && j.contains("a")) return io::jacobi_from_json(j);
  return jacobi_extract(io::matrix_from_json(j), tol);
}

inline void apply_env(Tolerances& tol) {
  auto read = [](const char* name, double& dst) {
    if (const char* v = std::getenv(name)) dst = parse_double(v, name);
  };
  read("POSPARAM_TOL_PSD", tol.psd_eig_tol);
  read("POSPARAM_TOL_RANK", tol.rank_tol);
  read("POSPARAM_TOL_RECON", tol.recon_tol);
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  using detail::Json;

  CLI::App app{"Positive-matrix parametrizations and separability checks", "posparam"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol_psd;
  std::optional<double> tol_rank;
  std::optional<double> tol_recon;
  detail::Context ctx;
  ctx.in = &in;
  app.add_option("--tol-psd", tol_psd, "eigenvalue floor (relative)");
  app.add_option("--tol-rank", tol_rank, "singular-value cutoff (relative)");
  app.add_option("--tol-recon", tol_recon, "reconstruction tolerance (relative)");
  app.add_option("--seed", ctx.seed, "random seed for generators");
  app.add_option("--out", ctx.out_format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--in", ctx.in_path, "input file, '-' for stdin");

  auto group = [&](const char* name, const char* help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [](CLI::App* g, const char* name, const char* help) {
    CLI::App* c = g->add_subcommand(name, help);
    c->fallthrough();
    return c;
  };

  CLI::App* sc = group("sc", "Schur complement parameters");
  CLI::App* sc_ext = leaf(sc, "extract", "matrix -> SC parameters");
  CLI::App* sc_rec = leaf(sc, "reconstruct", "SC parameters -> matrix");
  CLI::App* sc_chol = leaf(sc, "cholesky", "SC parameters or matrix -> Cholesky factor");
  CLI::App* sc_det = leaf(sc, "det", "SC parameters or matrix -> determinant");
  CLI::App* sc_r1 = leaf(sc, "rank1", "SC parameters or matrix -> rank-one test");

  CLI::App* jac = group("jacobi", "near-tridiagonal (Jacobi) parameters");
  CLI::App* j_ext = leaf(jac, "extract", "matrix -> Jacobi parameters");
  CLI::App* j_rec = leaf(jac, "reconstruct", "Jacobi parameters -> matrix");
  CLI::App* j_chol = leaf(jac, "cholesky", "Jacobi parameters or matrix -> factor");
  CLI::App* j_det = leaf(jac, "det", "Jacobi parameters or matrix -> determinant");
  CLI::App* j_h2j = leaf(jac, "hankel-to-j", "moments -> tridiagonal model");
  CLI::App* j_j2h = leaf(jac, "j-to-hankel", "tridiagonal model -> moments");
  std::optional<std::size_t> moment_count;
  j_j2h->add_option("--m", moment_count, "highest moment index (even)");

  CLI::App* st = group("state", "density matrices");
  std::string dims_text;
  CLI::App* st_ppt = leaf(st, "ppt", "PPT verdict");
  st_ppt->add_option("--dims", dims_text, "A,B subsystem dimensions");
  CLI::App* st_kraus = leaf(st, "kraus", "Kraus operators from the SC Cholesky rows");
  st_kraus->add_option("--dims", dims_text, "A,B subsystem dimensions");
  CLI::App* st_qc = leaf(st, "qubit-coords", "qubit state -> (s0, a1, b0)");
  CLI::App* st_qf = leaf(st, "qubit-from-coords", "(s0, a1, b0) -> qubit state");

  CLI::App* sep = group("sep", "separable families and detectors");
  std::string kind_text = "S1";
  std::size_t pattern_n = 0;
  std::string is_text;
  std::string a_text = "1";
  std::string b_text = "1";
  std::string c_text = "1";
  CLI::App* sep_pat = leaf(sep, "pattern", "pattern matrix");
  CLI::App* sep_gp = leaf(sep, "gen-pattern", "random patterned state");
  for (CLI::App* c : {sep_pat, sep_gp}) {
    c->add_option("--kind", kind_text, "GENERAL, S1, S2, S3, SYMMETRIC_BLOCK or HANKEL");
    c->add_option("--n", pattern_n, "pattern size (GENERAL)");
    c->add_option("--is", is_text, "1-based indices of I_s (GENERAL)");
  }
  sep_pat->add_option("--a", a_text, "I_s value (re or re,im)");
  sep_pat->add_option("--b", b_text, "I_t value");
  sep_pat->add_option("--c", c_text, "cross value");
  std::size_t gen_k = 2;
  sep_gp->add_option("--k", gen_k, "A-side dimension");
  std::size_t hankel_m = 2;
  std::size_t hankel_points = 3;
  CLI::App* sep_gh = leaf(sep, "gen-hankel", "random Hankel state (m x 2)");
  sep_gh->add_option("--m", hankel_m, "A-side dimension");
  sep_gh->add_option("--points", hankel_points, "number of measure atoms");
  CLI::App* sep_r1 = leaf(sep, "rank1-test", "rank-one Kraus detector");
  CLI::App* sep_chk = leaf(sep, "checklist", "3x3 parameter checklist");
  CLI::App* sep_bat = leaf(sep, "battery", "all detectors on a JSON array of states");
  for (CLI::App* c : {sep_r1, sep_chk}) c->add_option("--dims", dims_text, "A,B subsystem dimensions");

  std::vector<std::string> argv_store{"posparam"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "posparam: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto emit = [&](const Json& j) { out << io::dump(j) << "\n"; };

  try {
    detail::apply_env(ctx.tol);
    if (tol_psd) ctx.tol.psd_eig_tol = *tol_psd;
    if (tol_rank) ctx.tol.rank_tol = *tol_rank;
    if (tol_recon) ctx.tol.recon_tol = *tol_recon;
    ctx.tol.validate();

    const bool battery = sep_bat->parsed();
    if (ctx.out_format == "csv" && !battery) throw detail::FormatError("--out csv is only available for sep battery");

    std::optional<std::pair<std::size_t, std::size_t>> dims;
    if (!dims_text.empty()) dims = detail::parse_dims(dims_text);
    const Tolerances& tol = ctx.tol;

    auto family = [&]() {
      const PatternKind kind = parse_pattern_kind(kind_text);
      std::vector<std::size_t> i_s;
      if (!is_text.empty()) i_s = detail::parse_counts(is_text, "--is");
      return PatternFamily::of_kind(kind, pattern_n, i_s);
    };

    if (sc_ext->parsed()) {
      emit(io::sc_to_json(sc_extract(io::matrix_from_json(ctx.read_input()), tol)));
    } else if (sc_rec->parsed()) {
      emit(io::matrix_to_json(sc_reconstruct(io::sc_from_json(ctx.read_input()), tol)));
    } else if (sc_chol->parsed()) {
      emit(io::matrix_to_json(sc_cholesky(detail::sc_params_or_extract(ctx.read_input(), tol), tol)));
    } else if (sc_det->parsed()) {
      emit(Json(sc_determinant(detail::sc_params_or_extract(ctx.read_input(), tol))));
    } else if (sc_r1->parsed()) {
      emit(Json{{"rank_one", sc_is_rank_one(detail::sc_params_or_extract(ctx.read_input(), tol), tol)}});
    } else if (j_ext->parsed()) {
      emit(io::jacobi_to_json(jacobi_extract(io::matrix_from_json(ctx.read_input()), tol)));
    } else if (j_rec->parsed()) {
      emit(io::matrix_to_json(jacobi_reconstruct(io::jacobi_from_json(ctx.read_input()))));
    } else if (j_chol->parsed()) {
      emit(io::matrix_to_json(jacobi_cholesky(detail::jacobi_params_or_extract(ctx.read_input(), tol))));
    } else if (j_det->parsed()) {
      emit(Json(jacobi_determinant(detail::jacobi_params_or_extract(ctx.read_input(), tol))));
    } else if (j_h2j->parsed()) {
      const Json in_json = ctx.read_input();
      const HankelMoments h =
          in_json.is_array() ? HankelMoments(io::complex_list_from_json(in_json, "moment"), tol)
                             : io::moments_from_json(in_json, tol);
      Json o = io::tridiagonal_to_json(tridiagonal_from_hankel(h, tol));
      o["m"] = h.s().size() - 1;
      emit(o);
    } else if (j_j2h->parsed()) {
      const Json in_json = ctx.read_input();
      const TridiagonalModel t = io::tridiagonal_from_json(in_json);
      std::size_t m = 2 * static_cast<std::size_t>(t.j.rows());
      if (in_json.contains("m")) m = io::detail::count(in_json["m"], "m");
      if (moment_count) m = *moment_count;
      emit(io::moments_to_json(hankel_from_tridiagonal(t.j, t.s0, m, tol)));
    } else if (st_ppt->parsed()) {
      emit(io::verdict_to_json(ppt_verdict(io::state_from_json(ctx.read_input(), tol, dims), tol)));
    } else if (st_kraus->parsed()) {
      emit(io::kraus_to_json(kraus_from_state(io::state_from_json(ctx.read_input(), tol, dims), tol)));
    } else if (st_qc->parsed()) {
      emit(io::qubit_to_json(qubit_to_jacobi(DensityMatrix(io::matrix_from_json(ctx.read_input()), tol), tol)));
    } else if (st_qf->parsed()) {
      emit(io::matrix_to_json(jacobi_to_qubit(io::qubit_from_json(ctx.read_input()), tol).mat()));
    } else if (sep_pat->parsed()) {
      emit(io::matrix_to_json(pattern_matrix(family(), detail::parse_complex(a_text, "--a"),
                                             detail::parse_complex(b_text, "--b"),
                                             detail::parse_complex(c_text, "--c"))));
    } else if (sep_gp->parsed()) {
      emit(io::state_to_json(gen_pattern_state(family(), gen_k, ctx.seed, tol)));
    } else if (sep_gh->parsed()) {
      emit(io::state_to_json(gen_hankel_state(hankel_m, hankel_points, ctx.seed, tol)));
    } else if (sep_r1->parsed()) {
      emit(io::verdict_to_json(rank1_kraus_test(io::state_from_json(ctx.read_input(), tol, dims), tol)));
    } else if (sep_chk->parsed()) {
      emit(io::checklist_to_json(checklist_3x3(io::state_from_json(ctx.read_input(), tol, dims), tol)));
    } else if (battery) {
      const Json in_json = ctx.read_input();
      const Json& list = in_json.is_object() && in_json.contains("states") ? in_json["states"] : in_json;
      if (!list.is_array()) throw detail::FormatError("battery: expected a JSON array of states");
      std::vector<BipartiteState> states;
      for (const Json& s : list) states.push_back(io::state_from_json(s, tol));
      const BatteryReport report = run_detector_battery(states, tol);
      if (ctx.out_format == "csv") {
        out << report.to_csv();
      } else {
        emit(io::battery_to_json(report));
      }
    }
  } catch (const io::FormatError& e) {
    err << "posparam: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "posparam: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace posparam::cli
