#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "framelab/frame_io.hpp"
#include "framelab/generators.hpp"
#include "framelab/infdim.hpp"
#include "framelab/linalg.hpp"
#include "framelab/local.hpp"
#include "framelab/ortho_reduce.hpp"
#include "framelab/phase_metric.hpp"
#include "framelab/stability.hpp"
#include "framelab/witness.hpp"

using nlohmann::json;
namespace fl = framelab;

namespace {

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("FRAMELAB_SEED")) {
    try {
      std::size_t used = 0;
      std::uint64_t s = std::stoull(env, &used);
      if (used == std::string(env).size()) return s;
    } catch (...) {
    }
    fl::fail(fl::ErrorKind::BadArgument,
             "FRAMELAB_SEED must be an unsigned integer");
  }
  return cli_seed;
}

std::string trim_front(const std::string& s) {
  std::size_t i = s.find_first_not_of(" \t\r\n");
  return i == std::string::npos ? std::string() : s.substr(i);
}

// Accepts a vector literal like "(1, 0+1i)" directly, or a path to a file
// holding either a literal or a JSON array in the frame entry convention.
fl::Vec vector_arg(const std::string& arg, const fl::FrameSpec& frame,
                   const char* what) {
  std::string text = arg;
  if (trim_front(arg).rfind('(', 0) != 0) text = fl::read_text_file(arg);
  std::string t = trim_front(text);
  fl::Vec v;
  if (t.rfind('(', 0) == 0) {
    v = fl::parse_vector_literal(t, frame.field);
  } else {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fl::fail(fl::ErrorKind::ParseError,
               std::string("invalid vector JSON: ") + e.what());
    }
    v = fl::vector_from_json(j, frame.field);
  }
  fl::check_vector(frame, v, what);
  return v;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
  } else {
    fl::write_text_file(out, content);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void emit_report(const std::string& out, const std::string& command,
                 json config, json payload,
                 std::chrono::steady_clock::time_point t0) {
  json rep{{"tool", "framelab"},
           {"version", "0.1.0"},
           {"command", command},
           {"config", std::move(config)},
           {"wall_time_s", seconds_since(t0)},
           {"payload", std::move(payload)}};
  emit(out, rep.dump(2));
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json();
}

struct CommonOpts {
  std::string frame_path;
  std::string out = "-";
  std::string format = "json";
};

void require_json_format(const CommonOpts& c) {
  if (c.format != "json")
    fl::fail(fl::ErrorKind::BadArgument,
             "this command has no CSV layout; use --format json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase retrieval stability toolkit for finite frames"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "framelab 0.1.0");

  // check ------------------------------------------------------------
  auto check_opts = std::make_shared<CommonOpts>();
  auto check_x = std::make_shared<std::string>();
  auto* check = app.add_subcommand(
      "check", "frame bounds, and measurement magnitudes of a vector");
  check->add_option("--frame", check_opts->frame_path, "frame file")
      ->required();
  check->add_option("--x", *check_x, "vector literal or file");
  check->add_option("--out", check_opts->out, "output path, - for stdout");
  check->add_option("--format", check_opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  check->callback([check_opts, check_x] {
    auto t0 = std::chrono::steady_clock::now();
    fl::FrameSpec frame = fl::load_frame_file(check_opts->frame_path);
    fl::FrameBounds b = fl::frame_bounds(frame);
    if (check_opts->format == "csv") {
      if (check_x->empty())
        fl::fail(fl::ErrorKind::BadArgument, "csv output needs --x");
      fl::Vec x = vector_arg(*check_x, frame, "x");
      emit(check_opts->out, fl::magnitudes_csv(frame, x));
      return;
    }
    json payload{{"label", frame.label},
                 {"field", fl::field_name(frame.field)},
                 {"dim", frame.dim},
                 {"m", frame.size()},
                 {"lower", b.lower},
                 {"upper", b.upper},
                 {"is_frame", b.spans()}};
    json config{{"frame", check_opts->frame_path}};
    if (!check_x->empty()) {
      fl::Vec x = vector_arg(*check_x, frame, "x");
      fl::MagnitudeMeasurement mm = fl::magnitudes(frame, x);
      payload["magnitudes"] = std::vector<double>(
          mm.values.data(), mm.values.data() + mm.values.size());
      config["x"] = *check_x;
    }
    emit_report(check_opts->out, "check", config, payload, t0);
  });

  // stability ----------------------------------------------------------
  auto st_opts = std::make_shared<CommonOpts>();
  auto st = std::make_shared<fl::SearchBudget>();
  auto st_seed = std::make_shared<std::uint64_t>(12345);
  auto st_oracle = std::make_shared<bool>(false);
  auto* stab = app.add_subcommand(
      "stability", "estimate the infimum of the stability quotient");
  stab->add_option("--frame", st_opts->frame_path, "frame file")->required();
  stab->add_option("--starts", st->n_starts, "number of descent starts");
  stab->add_option("--grid", st->grid_density,
                   "dimension-2 sweep density (0 disables)");
  stab->add_option("--refine", st->refine_iters, "descent passes per level");
  stab->add_option("--threads", st->threads, "worker threads");
  stab->add_option("--seed", *st_seed, "random seed");
  stab->add_flag("--oracle", *st_oracle,
                 "cross-check with the dimension-2 grid oracle");
  stab->add_option("--out", st_opts->out, "output path, - for stdout");
  stab->add_option("--format", st_opts->format, "json")
      ->check(CLI::IsMember({"json", "csv"}));
  stab->callback([st_opts, st, st_seed, st_oracle] {
    auto t0 = std::chrono::steady_clock::now();
    require_json_format(*st_opts);
    fl::FrameSpec frame = fl::load_frame_file(st_opts->frame_path);
    std::uint64_t seed = effective_seed(*st_seed);
    fl::StabilityReport rep = fl::estimate_stability(frame, *st, seed);
    if (*st_oracle) {
      int d = st->grid_density > 1 ? st->grid_density : 64;
      rep.oracle_value = fl::oracle_stability_dim2(frame, d);
      rep.verdict = fl::classify_stability(rep.inf_psi_estimate,
                                           rep.oracle_value);
    }
    json payload{{"inf_psi_estimate", rep.inf_psi_estimate},
                 {"c_estimate", finite_or_null(rep.c_estimate)},
                 {"verdict", fl::verdict_name(rep.verdict)},
                 {"n_starts", rep.n_starts},
                 {"n_evals", rep.n_evals},
                 {"seed", rep.seed},
                 {"argmin",
                  {{"x", fl::vector_to_json(rep.argmin.x, frame.field)},
                   {"y", fl::vector_to_json(rep.argmin.y, frame.field)}}}};
    payload["oracle_value"] =
        rep.oracle_value ? json(*rep.oracle_value) : json();
    json config{{"frame", st_opts->frame_path}, {"starts", st->n_starts},
                {"grid", st->grid_density},    {"refine", st->refine_iters},
                {"threads", st->threads},      {"seed", seed},
                {"oracle", *st_oracle}};
    emit_report(st_opts->out, "stability", config, payload, t0);
  });

  // reduce -------------------------------------------------------------
  auto rd_opts = std::make_shared<CommonOpts>();
  auto rd_x = std::make_shared<std::string>();
  auto rd_y = std::make_shared<std::string>();
  auto rd_grid = std::make_shared<int>(101);
  auto* red = app.add_subcommand(
      "reduce", "orthogonalize a pair without increasing the quotient");
  red->add_option("--frame", rd_opts->frame_path, "frame file")->required();
  red->add_option("--x", *rd_x, "vector literal or file")->required();
  red->add_option("--y", *rd_y, "vector literal or file")->required();
  red->add_option("--grid", *rd_grid, "gap monotonicity grid points");
  red->add_option("--out", rd_opts->out, "output path, - for stdout");
  red->add_option("--format", rd_opts->format, "json")
      ->check(CLI::IsMember({"json", "csv"}));
  red->callback([rd_opts, rd_x, rd_y, rd_grid] {
    auto t0 = std::chrono::steady_clock::now();
    require_json_format(*rd_opts);
    fl::FrameSpec frame = fl::load_frame_file(rd_opts->frame_path);
    fl::Vec x = vector_arg(*rd_x, frame, "x");
    fl::Vec y = vector_arg(*rd_y, frame, "y");
    fl::OrthoPair pair = fl::reduce_pair(frame, x, y);
    fl::Vec aligned = fl::phase_align(x, y);
    fl::GapMonotoneReport mono =
        fl::coordinate_gap_monotone(frame, x, aligned, *rd_grid);
    json payload{
        {"R", pair.R},
        {"psi_before", pair.psi_before},
        {"psi_after", pair.psi_after},
        {"x_o", fl::vector_to_json(pair.x_o, frame.field)},
        {"y_o", fl::vector_to_json(pair.y_o, frame.field)},
        {"monotone",
         {{"max_upward_step", mono.max_upward_step},
          {"min_drop_at_R", mono.min_drop_at_R},
          {"max_abs_at_half", mono.max_abs_at_half}}}};
    json config{{"frame", rd_opts->frame_path},
                {"x", *rd_x},
                {"y", *rd_y},
                {"grid", *rd_grid}};
    emit_report(rd_opts->out, "reduce", config, payload, t0);
  });

  // local --------------------------------------------------------------
  auto lo_opts = std::make_shared<CommonOpts>();
  auto lo_x = std::make_shared<std::string>();
  auto lo_dirs = std::make_shared<int>(32);
  auto lo_radii = std::make_shared<int>(21);
  auto lo_seed = std::make_shared<std::uint64_t>(12345);
  auto lo_threads = std::make_shared<int>(1);
  auto lo_eps = std::make_shared<double>(0.0);
  auto lo_samples = std::make_shared<int>(0);
  auto lo_nowit = std::make_shared<bool>(false);
  auto* loc = app.add_subcommand(
      "local", "gap/distance ratio profile around a base point");
  loc->add_option("--frame", lo_opts->frame_path, "frame file")->required();
  loc->add_option("--x", *lo_x, "vector literal or file")->required();
  loc->add_option("--dirs", *lo_dirs, "random directions");
  loc->add_option("--radii", *lo_radii, "dyadic radii");
  loc->add_option("--seed", *lo_seed, "random seed");
  loc->add_option("--threads", *lo_threads, "worker threads");
  loc->add_option("--epsilon", *lo_eps,
                  "tail target; also reports the tail radius");
  loc->add_option("--samples", *lo_samples,
                  "sampled guarantee checks for the tail radius");
  loc->add_flag("--no-witness-dir", *lo_nowit,
                "skip the automatic witness direction");
  loc->add_option("--out", lo_opts->out, "output path, - for stdout");
  loc->add_option("--format", lo_opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  loc->callback([lo_opts, lo_x, lo_dirs, lo_radii, lo_seed, lo_threads,
                 lo_eps, lo_samples, lo_nowit] {
    auto t0 = std::chrono::steady_clock::now();
    fl::FrameSpec frame = fl::load_frame_file(lo_opts->frame_path);
    fl::Vec x = vector_arg(*lo_x, frame, "x");
    std::uint64_t seed = effective_seed(*lo_seed);

    std::vector<fl::Vec> extra;
    bool wit_used = false;
    if (!*lo_nowit && frame.field == fl::Field::Complex &&
        frame.size() == frame.dim) {
      try {
        extra.push_back(fl::cn_basis_witness(frame, x).direction);
        wit_used = true;
      } catch (const fl::Error&) {
        // base points without two active coefficients proceed without it
      }
    }
    fl::LocalReport rep = fl::local_ratio_profile(
        frame, x, *lo_dirs, *lo_radii, seed, extra, *lo_threads);

    if (lo_opts->format == "csv") {
      std::string csv = "radius,min_ratio\n";
      for (std::size_t k = 0; k < rep.radii.size(); ++k)
        csv += fmt_g(rep.radii[k]) + "," + fmt_g(rep.min_ratio[k]) + "\n";
      emit(lo_opts->out, csv);
      return;
    }
    json payload{{"beta", rep.beta},
                 {"lower_bound", rep.lower_bound},
                 {"constant", finite_or_null(rep.constant)},
                 {"support", rep.support},
                 {"radii", rep.radii},
                 {"min_ratio", rep.min_ratio},
                 {"trend", rep.trend},
                 {"empirical_local_inf", finite_or_null(rep.empirical_local_inf)},
                 {"witness_dir_used", wit_used}};
    if (*lo_eps > 0) {
      fl::TailRadius tr =
          fl::choose_tail_radius(frame, x, *lo_eps, *lo_samples, seed);
      payload["tail"] = json{{"epsilon", *lo_eps},
                             {"beta_alpha", tr.beta_alpha},
                             {"alpha", tr.report.alpha},
                             {"omega", tr.report.omega},
                             {"tail_norm", tr.report.tail},
                             {"sampled_margin", tr.sampled_margin},
                             {"n_sampled", tr.n_sampled}};
    }
    json config{{"frame", lo_opts->frame_path}, {"x", *lo_x},
                {"dirs", *lo_dirs},             {"radii", *lo_radii},
                {"seed", seed},                 {"threads", *lo_threads},
                {"epsilon", *lo_eps},           {"samples", *lo_samples}};
    emit_report(lo_opts->out, "local", config, payload, t0);
  });

  // witness ------------------------------------------------------------
  auto wi_opts = std::make_shared<CommonOpts>();
  auto wi_mode = std::make_shared<std::string>();
  auto wi_x = std::make_shared<std::string>();
  auto wi_y = std::make_shared<std::string>();
  auto wi_count = std::make_shared<int>(16);
  auto wi_alpha0 = std::make_shared<double>(0.0);
  auto wi_seed = std::make_shared<std::uint64_t>(12345);
  auto* wit = app.add_subcommand(
      "witness", "construct a flattening direction and trace its ratios");
  wit->add_option("--frame", wi_opts->frame_path, "frame file")->required();
  wit->add_option("--mode", *wi_mode, "basis or realcoeff")
      ->required()
      ->check(CLI::IsMember({"basis", "realcoeff"}));
  wit->add_option("--x", *wi_x, "vector literal or file")->required();
  wit->add_option("--y", *wi_y, "second vector (realcoeff mode)");
  wit->add_option("--alphas", *wi_count, "trace length");
  wit->add_option("--alpha0", *wi_alpha0,
                  "largest alpha; 0 picks one inside the quadratic regime");
  wit->add_option("--seed", *wi_seed, "random seed");
  wit->add_option("--out", wi_opts->out, "output path, - for stdout");
  wit->add_option("--format", wi_opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  wit->callback([wi_opts, wi_mode, wi_x, wi_y, wi_count, wi_alpha0, wi_seed] {
    auto t0 = std::chrono::steady_clock::now();
    fl::FrameSpec frame = fl::load_frame_file(wi_opts->frame_path);
    fl::Vec x = vector_arg(*wi_x, frame, "x");
    std::uint64_t seed = effective_seed(*wi_seed);

    fl::WitnessPair pair;
    if (*wi_mode == "basis") {
      pair = fl::cn_basis_witness(frame, x);
    } else {
      if (wi_y->empty())
        fl::fail(fl::ErrorKind::BadArgument, "realcoeff mode needs --y");
      fl::Vec y = vector_arg(*wi_y, frame, "y");
      pair = fl::real_coeff_witness(frame, x, y, seed);
    }

    if (*wi_count < 1)
      fl::fail(fl::ErrorKind::BadArgument, "trace length must be positive");
    double cutoff =
        fl::quadratic_regime_cutoff(frame, pair.z, pair.direction);
    double a0 = *wi_alpha0 > 0
                    ? *wi_alpha0
                    : std::min(0.1, std::isfinite(cutoff) ? cutoff / 4 : 0.1);
    std::vector<double> alphas(*wi_count);
    for (int i = 0; i < *wi_count; ++i) alphas[i] = std::ldexp(a0, -i);

    fl::WitnessTrace tr =
        fl::trace_witness(frame, pair.z, pair.direction, alphas);
    fl::QuadraticBoundReport qb =
        fl::verify_quadratic_bound(frame, pair.z, pair.direction, alphas);

    if (wi_opts->format == "csv") {
      std::string csv = "alpha,numerator,denominator,ratio\n";
      for (std::size_t i = 0; i < alphas.size(); ++i)
        csv += fmt_g(tr.alphas[i]) + "," + fmt_g(tr.numerators[i]) + "," +
               fmt_g(tr.denominators[i]) + "," + fmt_g(tr.ratios[i]) + "\n";
      emit(wi_opts->out, csv);
      return;
    }
    json payload{{"mode", *wi_mode},
                 {"z", fl::vector_to_json(pair.z, frame.field)},
                 {"direction", fl::vector_to_json(pair.direction, frame.field)},
                 {"c_lemma", tr.c_lemma},
                 {"alphas", tr.alphas},
                 {"numerators", tr.numerators},
                 {"denominators", tr.denominators},
                 {"ratios", tr.ratios},
                 {"numerator_order", tr.numerator_order},
                 {"denominator_order", tr.denominator_order},
                 {"ratio_order", tr.ratio_order},
                 {"quadratic",
                  {{"k", qb.k},
                   {"alpha_cutoff", finite_or_null(qb.alpha_cutoff)},
                   {"max_violation", qb.max_violation}}}};
    if (*wi_mode == "basis") {
      payload["index_a"] = pair.index_a;
      payload["index_b"] = pair.index_b;
    } else {
      payload["shear"] = pair.shear;
    }
    json config{{"frame", wi_opts->frame_path}, {"mode", *wi_mode},
                {"x", *wi_x},                   {"y", *wi_y},
                {"alphas", *wi_count},          {"alpha0", *wi_alpha0},
                {"seed", seed}};
    emit_report(wi_opts->out, "witness", config, payload, t0);
  });

  // infdim -------------------------------------------------------------
  auto in_opts = std::make_shared<CommonOpts>();
  auto in_kind = std::make_shared<std::string>();
  auto in_n = std::make_shared<int>(64);
  auto in_levels = std::make_shared<int>(8);
  auto in_seed = std::make_shared<std::uint64_t>(12345);
  auto in_tail = std::make_shared<int>(0);
  auto* inf = app.add_subcommand(
      "infdim", "block systems and their flip-pair decay chains");
  inf->add_option("--kind", *in_kind, "onb, two_onb, or perturbed")
      ->required()
      ->check(CLI::IsMember({"onb", "two_onb", "perturbed"}));
  inf->add_option("--n", *in_n, "ambient dimension");
  inf->add_option("--levels", *in_levels, "number of chain levels K");
  inf->add_option("--seed", *in_seed, "random seed");
  inf->add_option("--tail", *in_tail,
                  "also chain the tail pairs starting at this level");
  inf->add_option("--out", in_opts->out, "output path, - for stdout");
  inf->add_option("--format", in_opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  inf->callback([in_opts, in_kind, in_n, in_levels, in_seed, in_tail] {
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t seed = effective_seed(*in_seed);
    fl::BlockSystem sys = fl::make_block_system(
        fl::parse_block_kind(*in_kind), *in_n, *in_levels, seed);
    fl::ConditionMargins margins = fl::verify_blocks(sys);

    std::vector<fl::ChainReport> chains;
    for (int k = 2; k <= sys.levels; ++k)
      chains.push_back(fl::verify_chains(sys, k));

    auto chain_json = [](const fl::ChainReport& c) {
      return json{{"k", c.k},
                  {"dist_sq_lower", c.dist_sq_lower},
                  {"b_dist_sq", c.b_dist_sq},
                  {"measured_dist_sq", c.measured_dist_sq},
                  {"gap_sq_upper", c.gap_sq_upper},
                  {"measured_gap_sq", c.measured_gap_sq},
                  {"ratio", c.ratio},
                  {"eq_value", c.eq51_value},
                  {"eq_ok", c.eq51_ok},
                  {"chain_ok", c.chain_ok}};
    };

    if (in_opts->format == "csv") {
      std::string csv =
          "k,dist_sq_lower,b_dist_sq,gap_sq_upper,measured_gap_sq,ratio\n";
      for (const auto& c : chains)
        csv += std::to_string(c.k) + "," + fmt_g(c.dist_sq_lower) + "," +
               fmt_g(c.b_dist_sq) + "," + fmt_g(c.gap_sq_upper) + "," +
               fmt_g(c.measured_gap_sq) + "," + fmt_g(c.ratio) + "\n";
      emit(in_opts->out, csv);
      return;
    }

    json payload{{"kind", *in_kind},
                 {"n", *in_n},
                 {"levels", sys.levels},
                 {"rescale_factor", sys.rescale_factor},
                 {"margins",
                  {{"ok", margins.ok},
                   {"on_block", margins.on_block},
                   {"off_block", margins.off_block},
                   {"cross_ratio", margins.cross_ratio}}}};
    payload["chains"] = json::array();
    for (const auto& c : chains) payload["chains"].push_back(chain_json(c));
    if (*in_tail >= 1) {
      payload["tail_chains"] = json::array();
      for (int k = std::max(2, *in_tail); k <= sys.levels; ++k) {
        fl::Vec x, y;
        fl::build_tail_pair(sys, *in_tail, k, x, y);
        payload["tail_chains"].push_back(
            chain_json(fl::verify_chain_pair(sys, k, x, y)));
      }
    }
    json config{{"kind", *in_kind},   {"n", *in_n},
                {"levels", *in_levels}, {"seed", seed},
                {"tail", *in_tail}};
    emit_report(in_opts->out, "infdim", config, payload, t0);
  });

  // gen ----------------------------------------------------------------
  auto ge_kind = std::make_shared<std::string>();
  auto ge_n = std::make_shared<int>(2);
  auto ge_m = std::make_shared<int>(3);
  auto ge_seed = std::make_shared<std::uint64_t>(12345);
  auto ge_field = std::make_shared<std::string>("real");
  auto ge_out = std::make_shared<std::string>("-");
  auto* gen = app.add_subcommand("gen", "write a frame file");
  gen->add_option("kind", *ge_kind,
                  "onb, mercedes, random_real, random_complex, harmonic")
      ->required();
  gen->add_option("n", *ge_n, "dimension");
  gen->add_option("m", *ge_m, "number of vectors");
  gen->add_option("--seed", *ge_seed, "random seed");
  gen->add_option("--field", *ge_field, "field for onb")
      ->check(CLI::IsMember({"real", "complex"}));
  gen->add_option("--out", *ge_out, "output path, - for stdout");
  gen->callback([ge_kind, ge_n, ge_m, ge_seed, ge_field, ge_out] {
    fl::Field field =
        *ge_field == "complex" ? fl::Field::Complex : fl::Field::Real;
    fl::FrameSpec frame = fl::generate_frame(
        *ge_kind, *ge_n, *ge_m, field, effective_seed(*ge_seed));
    emit(*ge_out, fl::frame_to_json(frame).dump(2));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const fl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fl::error_exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
