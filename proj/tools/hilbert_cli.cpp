// hilbert: command-line front end for the Hilbert-geometry library.
//
// Exit codes: 0 ok, 1 usage or parse error, 2 violated precondition,
// 3 property violation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hilbert/asdim_cover.hpp"
#include "hilbert/coarse_props.hpp"
#include "hilbert/convex_domain.hpp"
#include "hilbert/hilbert_metric.hpp"
#include "hilbert/io.hpp"
#include "verify_suites.hpp"

namespace {

using hilbert::io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitViolation = 3;

struct Common {
  std::string body_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::optional<std::size_t> samples;
  double tol = 1e-9;
  std::string origin;
};

void add_common(CLI::App* cmd, Common& c, bool with_seed = true) {
  cmd->add_option("--body", c.body_path, "domain spec JSON file")->required();
  if (with_seed) cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--samples", c.samples, "sample / trial count");
  cmd->add_option("--tol", c.tol, "property assertion tolerance");
}

json config_header(const std::string& command, const Common& c, std::size_t samples) {
  json h;
  h["schema"] = hilbert::io::kSchemaVersion;
  h["tool"] = hilbert::io::kToolVersion;
  h["command"] = command;
  h["body"] = c.body_path;
  h["seed"] = c.seed;
  h["samples"] = samples;
  h["tolerances"] = {{"boundary_rel", hilbert::kBoundaryTol},
                     {"point", hilbert::kPointTol},
                     {"parallel", hilbert::kParallelTol},
                     {"assertion", c.tol}};
  return h;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hilbert::Error(hilbert::ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  spdlog::info("wrote {}", path.string());
}

hilbert::ConvexBody load_body(const Common& c) {
  auto body = hilbert::validate_body(hilbert::io::load_body_spec(c.body_path));
  for (const auto& w : body.warnings()) spdlog::warn("{}: {}", c.body_path, w);
  return body;
}

hilbert::Point origin_of(const hilbert::ConvexBody& body, const Common& c) {
  if (c.origin.empty()) return body.center();
  const auto o = hilbert::io::parse_point(c.origin);
  if (!hilbert::is_interior(body, o)) throw hilbert::Error(hilbert::ErrorCode::ExteriorBase, "origin is not interior");
  return o;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (double v : hilbert::io::parse_point(text).coords()) out.push_back(v);
  return out;
}

int run_dist(const Common& c, const std::string& xs, const std::string& ys) {
  const auto body = load_body(c);
  const auto x = hilbert::io::parse_point(xs), y = hilbert::io::parse_point(ys);
  std::printf("%.12f\n", hilbert::distance(body, x, y));
  return kExitOk;
}

int run_ball(const Common& c, const std::string& center_text, double t, std::size_t n) {
  const auto body = load_body(c);
  if (!(t > 0.0)) throw hilbert::Error(hilbert::ErrorCode::InvalidArgument, "--t must be positive");
  const auto center = center_text.empty() ? body.center() : hilbert::io::parse_point(center_text);
  if (!hilbert::is_interior(body, center)) throw hilbert::Error(hilbert::ErrorCode::ExteriorBase, "ball center is not interior");
  const auto ball = hilbert::ball_boundary(body, center, t, n);

  hilbert::io::SvgCanvas svg(body);
  svg.comment("hilbert ball: center (" + svg.fmt(center[0]) + "," + svg.fmt(center[1]) + ") radius " + svg.fmt(t) +
              " samples " + std::to_string(n));
  svg.coordinate_comment("ball vertices", ball.samples);
  svg.polygon(hilbert::outline(body), "body", "none", "#222222", 2.0);
  svg.polygon(ball.samples, "ball", "#4a90d9", "#1f4e79", 1.5);
  svg.dot(center, 3.0, "center", "#000000");
  const fs::path out = fs::path(c.out_dir) / "ball.svg";
  write_text(out, svg.str());
  std::printf("%s\n", out.string().c_str());
  return kExitOk;
}

int run_cover(const Common& c, double big_r, int levels, double r) {
  if (!(r > 0.0) || !(big_r > 4.0 * r))
    throw hilbert::Error(hilbert::ErrorCode::BadRadii, "the cover needs R > 4r > 0 (got R = " + std::to_string(big_r) +
                                                           ", r = " + std::to_string(r) + ")");
  const auto body = load_body(c);
  const auto o = origin_of(body, c);
  const std::size_t trials = c.samples.value_or(5000);
  hilbert::CoverParams params;
  params.big_r = big_r;
  spdlog::info("building cover: R={} levels={}", big_r, levels);
  const auto cover = hilbert::build_cover(body, o, params, levels);
  spdlog::info("{} pieces; auditing with r={} over {} trials", cover.pieces.size(), r, trials);
  const auto audit = hilbert::audit_cover(cover, r, trials, c.seed);

  json doc;
  doc["config"] = config_header("cover", c, trials);
  doc["config"]["tolerances"]["arc"] = params.tol_arc();
  doc["config"]["n_arc"] = params.n_arc;
  doc["config"]["r"] = r;
  doc["cover"] = hilbert::io::cover_to_json(cover);
  doc["audit"] = hilbert::io::audit_to_json(cover, audit);

  hilbert::io::SvgCanvas svg(body);
  svg.comment("cover: R " + svg.fmt(big_r) + " levels " + std::to_string(levels) + " pieces " +
              std::to_string(cover.pieces.size()));
  svg.polygon(hilbert::outline(body), "body", "none", "#222222", 2.0);
  for (auto it = cover.pieces.rbegin(); it != cover.pieces.rend(); ++it) {
    const auto pts = hilbert::piece_boundary_samples(body, o, *it, 384);
    svg.polygon(pts, "piece level" + std::to_string(it->level), it->level % 2 == 0 ? "#f3c677" : "#7fb3d5", "#333333",
                0.6);
  }
  for (const auto& dec : cover.decompositions)
    for (const auto& m : dec.markers)
      svg.dot(dec.level.at(m.angle), 2.5, m.kind == hilbert::MarkerKind::X ? "marker-x" : "marker-y",
              m.kind == hilbert::MarkerKind::X ? "#c0392b" : "#27ae60");

  const fs::path dir(c.out_dir);
  write_text(dir / "cover.json", doc.dump(2) + "\n");
  write_text(dir / "cover_audit.csv", hilbert::io::audit_csv(cover, audit));
  write_text(dir / "cover.svg", svg.str());

  const bool ok = audit.passes(big_r);
  std::printf("pieces %zu  max diameter %.6f (bound %.6f)  max multiplicity %zu (bound 3)  %s\n", cover.pieces.size(),
              audit.max_piece_diameter, audit.diameter_bound, audit.multiplicity.max_count, ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitViolation;
}

int run_verify(const Common& c, const std::string& suite, double big_r, double r, int levels) {
  static const std::vector<std::string> kSuites{"metric", "coarse", "corona", "asdim", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw hilbert::Error(hilbert::ErrorCode::InvalidArgument, "unknown suite \"" + suite + "\"");
  const auto body = load_body(c);
  hilbert::cli::SuiteConfig cfg;
  cfg.seed = c.seed;
  cfg.samples = c.samples.value_or(1000);
  cfg.tol = c.tol;
  cfg.big_r = big_r;
  cfg.small_r = r;
  cfg.levels = levels;
  cfg.origin = origin_of(body, c);

  std::vector<hilbert::cli::Row> rows;
  auto run = [&](const std::string& name, auto fn) {
    if (suite != name && suite != "all") return;
    spdlog::info("suite {}", name);
    auto got = fn(body, cfg);
    rows.insert(rows.end(), got.begin(), got.end());
  };
  run("metric", hilbert::cli::metric_suite);
  run("coarse", hilbert::cli::coarse_suite);
  run("corona", hilbert::cli::corona_suite);
  run("asdim", hilbert::cli::asdim_suite);

  json doc;
  doc["config"] = config_header("verify", c, cfg.samples);
  doc["config"]["suite"] = suite;
  json arr = json::array();
  std::string csv = "suite,invariant,pass,worst,bound,samples,note\n";
  bool all_pass = true;
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    arr.push_back({{"suite", row.suite},
                   {"invariant", row.invariant},
                   {"pass", row.pass},
                   {"worst", row.worst},
                   {"bound", row.bound},
                   {"samples", row.samples},
                   {"note", row.note}});
    char buf[160];
    std::snprintf(buf, sizeof buf, ",%s,%.6e,%.6e,%zu,", row.pass ? "true" : "false", row.worst, row.bound, row.samples);
    csv += row.suite + "," + row.invariant + buf + "\"" + row.note + "\"\n";
    std::printf("%-7s %-45s %s  worst %.3e  bound %.3e  n=%zu%s%s\n", row.suite.c_str(), row.invariant.c_str(),
                row.pass ? "PASS" : "FAIL", row.worst, row.bound, row.samples, row.note.empty() ? "" : "  ",
                row.note.c_str());
  }
  doc["rows"] = arr;
  doc["all_pass"] = all_pass;
  const fs::path dir(c.out_dir);
  write_text(dir / "verify.json", doc.dump(2) + "\n");
  write_text(dir / "verify.csv", csv);
  return all_pass ? kExitOk : kExitViolation;
}

int run_probe_corona(const Common& c, double delta, double big_c, const std::string& radii_text) {
  const auto body = load_body(c);
  const auto o = origin_of(body, c);
  const auto radii = parse_list(radii_text);
  const std::size_t samples = c.samples.value_or(5000);
  const auto rep = hilbert::corona_probe(body, o, delta, big_c, radii, samples, c.seed);
  const bool strict = hilbert::is_strictly_convex(body);

  json doc;
  doc["config"] = config_header("probe-corona", c, samples);
  doc["delta"] = delta;
  doc["C"] = big_c;
  doc["strictly_convex"] = strict;
  doc["probe_radii"] = rep.probe_radii;
  doc["sup_euclidean_gap"] = rep.sup_euclidean_gap;
  doc["below_delta_at_largest_radius"] = rep.below_delta_at_largest_radius();
  std::string csv = "radius,sup_euclidean_gap\n";
  for (std::size_t k = 0; k < radii.size(); ++k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f,%.12e\n", radii[k], rep.sup_euclidean_gap[k]);
    csv += buf;
    std::printf("radius %8.3f  sup gap %.6e\n", radii[k], rep.sup_euclidean_gap[k]);
  }
  const fs::path dir(c.out_dir);
  write_text(dir / "corona.json", doc.dump(2) + "\n");
  write_text(dir / "corona.csv", csv);
  return strict && !rep.below_delta_at_largest_radius() ? kExitViolation : kExitOk;
}

int run_packing(const Common& c, double big_r, double eps, const std::string& center_text) {
  const auto body = load_body(c);
  const auto center = center_text.empty() ? origin_of(body, c) : hilbert::io::parse_point(center_text);
  if (!hilbert::is_interior(body, center)) throw hilbert::Error(hilbert::ErrorCode::ExteriorBase, "center is not interior");
  const std::size_t trials = c.samples.value_or(20000);
  const auto rep = hilbert::greedy_packing(body, center, big_r, eps, trials, c.seed);
  json doc;
  doc["config"] = config_header("packing", c, trials);
  doc["center"] = hilbert::io::point_to_json(rep.center);
  doc["R"] = rep.radius;
  doc["epsilon"] = rep.epsilon;
  doc["count"] = rep.count;
  doc["bound"] = rep.bound;
  doc["within_bound"] = static_cast<double>(rep.count) <= rep.bound;
  write_text(fs::path(c.out_dir) / "packing.json", doc.dump(2) + "\n");
  std::printf("count %zu  bound %.6f  %s\n", rep.count, rep.bound,
              static_cast<double>(rep.count) <= rep.bound ? "PASS" : "FAIL");
  return static_cast<double>(rep.count) <= rep.bound ? kExitOk : kExitViolation;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("hilbert");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("HILBERT_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Hilbert metric on bounded convex domains"};
  app.require_subcommand(1);

  Common common;
  std::string xs, ys, center, suite = "all", radii = "2,4,6,8,10,12,14,16";
  double t = 1.0, big_r = 1.0, pack_r = 2.0, r = 0.2, eps = 0.25, delta = 0.1, big_c = 1.0;
  int levels = 4;
  std::size_t n = 64;

  auto* dist = app.add_subcommand("dist", "print the Hilbert distance between two points");
  add_common(dist, common, false);
  dist->add_option("--x", xs, "first point, e.g. 0,0")->required();
  dist->add_option("--y", ys, "second point")->required();

  auto* ball = app.add_subcommand("ball", "render a Hilbert ball as SVG");
  add_common(ball, common, false);
  ball->add_option("--center", center, "ball center (default: body center)");
  ball->add_option("--t", t, "Hilbert radius")->required();
  ball->add_option("--n", n, "boundary samples")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));

  auto* cover = app.add_subcommand("cover", "build and audit the bounded cover of multiplicity <= 3");
  add_common(cover, common);
  cover->add_option("--R", big_r, "sphere spacing R");
  cover->add_option("--levels", levels, "number of sphere levels")->check(CLI::Range(1, 64));
  cover->add_option("--r", r, "multiplicity radius r (needs R > 4r)");
  cover->add_option("--origin", common.origin, "base point (default: body center)");

  auto* verify = app.add_subcommand("verify", "run property suites");
  add_common(verify, common);
  verify->add_option("--suite", suite, "metric | coarse | corona | asdim | all");
  verify->add_option("--R", big_r, "cover sphere spacing for the asdim suite");
  verify->add_option("--r", r, "multiplicity radius for the asdim suite");
  verify->add_option("--levels", levels, "cover levels for the asdim suite")->check(CLI::Range(1, 64));
  verify->add_option("--origin", common.origin, "base point (default: body center)");

  auto* probe = app.add_subcommand("probe-corona", "Euclidean gaps of bounded-distance pairs by radius");
  add_common(probe, common);
  probe->add_option("--delta", delta, "target gap");
  probe->add_option("--C", big_c, "Hilbert step bound");
  probe->add_option("--radii", radii, "comma-separated probe radii");
  probe->add_option("--origin", common.origin, "base point (default: body center)");

  auto* packing = app.add_subcommand("packing", "greedy 2eps-separated packing of a ball");
  add_common(packing, common);
  packing->add_option("--R", pack_r, "ball radius");
  packing->add_option("--eps", eps, "separation epsilon");
  packing->add_option("--center", center, "ball center (default: body center)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*dist) return run_dist(common, xs, ys);
    if (*ball) return run_ball(common, center, t, n);
    if (*cover) return run_cover(common, big_r, levels, r);
    if (*verify) return run_verify(common, suite, big_r, r, levels);
    if (*probe) return run_probe_corona(common, delta, big_c, radii);
    if (*packing) return run_packing(common, pack_r, eps, center);
  } catch (const hilbert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == hilbert::ErrorCode::InvalidArgument ? kExitUsage : kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}
