#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <vector>

#include "report.hpp"
#include "solvgeo/curvature.hpp"
#include "solvgeo/soliton.hpp"

namespace solvgeo::cli {

using detail::to_json;

namespace {

const std::pair<const char*, Command> kCommands[] = {
    {"canonicalize", Command::Canonicalize},
    {"curvature", Command::Curvature},
    {"ricci", Command::Ricci},
    {"einstein", Command::Einstein},
    {"isometric", Command::Isometric},
    {"soliton-check", Command::SolitonCheck},
    {"extend-nilsoliton", Command::ExtendNilsoliton},
    {"random-metric", Command::RandomMetric},
    {"self-test", Command::SelfTest},
};

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Parse, path + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(path + "." + key, "missing");
  return *it;
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) parse_error(path, "expected a number");
  return v.get<double>();
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) parse_error(path, "expected an integer");
  return v.get<int>();
}

std::uint64_t as_seed(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned()) parse_error(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

Vector as_vector(const Json& v, const std::string& path) {
  if (!v.is_array()) parse_error(path, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = as_number(v[i], path + "[" + std::to_string(i) + "]");
  return out;
}

Matrix as_matrix(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) parse_error(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Matrix out(rows, rows);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const Vector row = as_vector(v[i], row_path);
    if (row.size() != rows)
      parse_error(row_path, "expected " + std::to_string(rows) + " entries, found " +
                                std::to_string(row.size()));
    out.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return out;
}

CanonicalMetric as_canonical(const Json& obj, const std::string& path, std::optional<int> n) {
  CanonicalMetric c;
  if (obj.contains("n")) c.n = as_int(obj["n"], path + ".n");
  else if (n) c.n = *n;
  else parse_error(path + ".n", "missing");
  if (c.n < 2) throw Error(ErrorKind::InvalidDimension, path + ".n: must be at least 2");
  c.p = as_number(field(obj, "p", path), path + ".p");
  c.x = as_vector(field(obj, "x", path), path + ".x");
  c.sigma = obj.contains("sigma") || c.n > 2 ? as_vector(field(obj, "sigma", path), path + ".sigma")
                                             : Vector();
  c.beta = as_number(field(obj, "beta", path), path + ".beta");
  if (c.x.size() != c.n - 1)
    throw Error(ErrorKind::Dimension, path + ".x: expected " + std::to_string(c.n - 1) + " entries");
  if (c.sigma.size() != c.n - 2)
    throw Error(ErrorKind::Dimension,
                path + ".sigma: expected " + std::to_string(c.n - 2) + " entries");
  c.validate();
  return c;
}

/// Metric from "S" (or `key`) when present, otherwise from the canonical keys.
MetricMatrix read_metric(const Json& obj, const std::string& key, const std::string& path,
                         std::optional<int> n) {
  if (obj.contains(key)) {
    const Json& v = obj[key];
    if (v.is_object()) return MetricMatrix::make(expand(as_canonical(v, path + "." + key, n)));
    const Matrix S = as_matrix(v, path + "." + key);
    if (n && S.rows() != 2 * *n)
      throw Error(ErrorKind::Dimension, path + "." + key + ": size " + std::to_string(S.rows()) +
                                            " does not match n = " + std::to_string(*n));
    return MetricMatrix::make(S);
  }
  if (key != "S") parse_error(path + "." + key, "missing");
  return MetricMatrix::make(expand(as_canonical(obj, path, n)));
}

struct Context {
  const Json& job;
  std::string path;
  Command command;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  double tol;
};

Json header(const Context& ctx) {
  Json out;
  out["command"] = to_string(ctx.command);
  return out;
}

double relative(double err, double scale) { return err / std::max(1.0, scale); }

double operator_scale(const std::vector<Matrix>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s = std::max(s, max_abs(m));
  return s;
}

/// Closed forms against the structure-constant oracle at one canonical tuple.
Json oracle_residuals(const CanonicalMetric& c, double* worst = nullptr) {
  const auto alg = build_chn(c.n);
  const Matrix S = expand(c);
  const int d = alg.dim();

  const auto kn = koszul_connection(alg.structure(), S);
  const auto cn = closed_form_connection(c);
  double conn = 0.0;
  for (int i = 0; i < d; ++i) conn = std::max(conn, max_abs(kn.nabla[i] - cn.nabla[i]));
  conn = relative(conn, operator_scale(kn.nabla));

  const auto oracle = curvature_oracle(alg.structure(), S);
  const auto closed = curvature_closed_form(c);
  const auto wedge = curvature_wedge(c);
  double curv = 0.0, wedge_err = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      curv = std::max(curv, max_abs(closed.op(a, b) - oracle.op(a, b)));
      wedge_err = std::max(wedge_err, max_abs(wedge.to_operator(a, b, S) - oracle.op(a, b)));
    }
  const double scale = operator_scale(oracle.operators);
  curv = relative(curv, scale);
  wedge_err = relative(wedge_err, scale);
  const double ric = relative(max_abs(ricci_closed_form(c) - oracle.ricci), max_abs(oracle.ricci));
  const double tau = std::abs(scalar_closed_form(c) - oracle.scalar) / std::abs(oracle.scalar);

  Json out;
  out["connection"] = conn;
  out["curvature"] = curv;
  out["wedge"] = wedge_err;
  out["ricci"] = ric;
  out["scalar"] = tau;
  if (worst) *worst = std::max({conn, curv, wedge_err, ric, tau});
  return out;
}

struct Reduced {
  MetricMatrix S;
  Canonicalization result;
};

Reduced reduce(const Context& ctx) {
  MetricMatrix S = read_metric(ctx.job, "S", ctx.path, ctx.n);
  Canonicalization r = canonicalize(S);
  return {std::move(S), std::move(r)};
}

void echo_metric(Json& out, const Context& ctx, const Reduced& red) {
  out["n"] = red.S.n();
  out["tol"] = ctx.tol;
  out["S"] = to_json(red.S.matrix());
}

void add_canonical(Json& out, const Reduced& red) {
  out["canonical"] = to_json(red.result.canonical);
  out["automorphism"] = to_json(red.result.automorphism);
  out["canonicalization_residual"] = red.result.residual;
}

Json run_canonicalize(const Context& ctx) {
  const Reduced red = reduce(ctx);
  Json out = header(ctx);
  echo_metric(out, ctx, red);
  add_canonical(out, red);
  out["certified"] = red.result.residual <= ctx.tol * std::max(1.0, max_abs(red.S.matrix()));
  return out;
}

Json run_curvature(const Context& ctx, bool operators) {
  const Reduced red = reduce(ctx);
  const CanonicalMetric& c = red.result.canonical;
  Json out = header(ctx);
  echo_metric(out, ctx, red);
  add_canonical(out, red);

  const Matrix ric = ricci_closed_form(c);
  // F is an isometry from expand(c) to S, so Ric_S = F^{-T} Ric F^{-1}.
  const Matrix Finv = inverse(red.result.automorphism).matrix();
  Matrix ric_input = Finv.transpose() * ric * Finv;
  ric_input = 0.5 * (ric_input + ric_input.transpose()).eval();
  out["scalar"] = scalar_closed_form(c);
  out["ricci"] = to_json(ric);
  out["ricci_input_basis"] = to_json(ric_input);
  if (operators) {
    const auto alg = build_chn(c.n);
    const auto closed = curvature_closed_form(c);
    Json ops = Json::array();
    for (int a = 0; a < alg.dim(); ++a)
      for (int b = a + 1; b < alg.dim(); ++b) {
        Json op;
        op["pair"] = {alg.basis_labels()[a], alg.basis_labels()[b]};
        op["R"] = to_json(closed.op(a, b));
        ops.push_back(std::move(op));
      }
    out["operators"] = std::move(ops);
  }
  out["oracle_residual"] = oracle_residuals(c);
  return out;
}

Json run_einstein(const Context& ctx) {
  const Reduced red = reduce(ctx);
  const CanonicalMetric& c = red.result.canonical;
  const EinsteinTest t = einstein_test(c, ctx.tol);
  Json out = header(ctx);
  echo_metric(out, ctx, red);
  add_canonical(out, red);
  out["einstein"] = t.matrix;
  out["parameter_test"] = t.parameters;
  out["tests_agree"] = t.matrix == t.parameters;
  out["constant"] = t.constant;
  out["residual"] = t.residual;
  out["scalar"] = scalar_closed_form(c);
  return out;
}

Json run_isometric(const Context& ctx) {
  const MetricMatrix S1 = read_metric(ctx.job, "S1", ctx.path, ctx.n);
  const MetricMatrix S2 = read_metric(ctx.job, "S2", ctx.path, ctx.n);
  if (S1.n() != S2.n()) throw Error(ErrorKind::Dimension, ctx.path + ": S1 and S2 differ in size");
  double iso_tol = 1e-7;
  if (ctx.job.contains("isometry_tol")) {
    iso_tol = as_number(ctx.job["isometry_tol"], ctx.path + ".isometry_tol");
    if (!(iso_tol > 0.0)) throw Error(ErrorKind::Domain, ctx.path + ".isometry_tol: must be positive");
  }
  const auto r1 = canonicalize(S1), r2 = canonicalize(S2);
  const auto &a = r1.canonical, &b = r2.canonical;
  double distance = std::max({std::abs(a.p - b.p), std::abs(a.beta - b.beta), max_abs(a.x - b.x)});
  if (a.sigma.size()) distance = std::max(distance, max_abs(a.sigma - b.sigma));

  Json out = header(ctx);
  out["n"] = S1.n();
  out["tol"] = ctx.tol;
  out["isometry_tol"] = iso_tol;
  out["S1"] = to_json(S1.matrix());
  out["S2"] = to_json(S2.matrix());
  out["canonical1"] = to_json(a);
  out["canonical2"] = to_json(b);
  out["canonicalization_residual"] = std::max(r1.residual, r2.residual);
  out["distance"] = distance;
  out["isometric"] = same_canonical(a, b, iso_tol);
  return out;
}

Json run_soliton(const Context& ctx) {
  const Reduced red = reduce(ctx);
  const CanonicalMetric& c = red.result.canonical;
  const SolitonCertificate cert = fit_soliton(c);
  Json out = header(ctx);
  echo_metric(out, ctx, red);
  add_canonical(out, red);
  out["soliton"] = cert.residual <= ctx.tol;
  out["c"] = cert.c;
  out["D"] = to_json(cert.D);
  out["residual"] = cert.residual;
  out["derivation_defect"] = derivation_defect(build_chn(c.n).structure(), cert.D);
  return out;
}

Json run_extend(const Context& ctx) {
  if (!ctx.n) parse_error(ctx.path + ".n", "missing");
  const double beta = as_number(field(ctx.job, "beta", ctx.path), ctx.path + ".beta");
  const NilsolitonData data = heisenberg_nilsoliton(*ctx.n, beta);
  const CanonicalMetric ext = extend_nilsoliton(data);
  const int n = *ctx.n;

  Vector h = Vector::Ones(2 * n - 1);
  h[2 * n - 2] = beta;
  const Matrix Sh = h.asDiagonal();
  const auto heis = curvature_oracle(build_heisenberg(n), Sh);
  const Matrix ric_op = Sh.inverse() * heis.ricci;

  const EinsteinTest t = einstein_test(ext, ctx.tol);
  const Matrix D = extension_derivation(data, ext);

  Json out = header(ctx);
  out["n"] = n;
  out["tol"] = ctx.tol;
  out["beta"] = beta;
  Json nil;
  nil["c"] = data.c;
  nil["D1"] = to_json(Vector(data.D1.diagonal()));
  nil["ricci_nil"] = to_json(Vector(data.ricci_nil.diagonal()));
  nil["oracle_residual"] = relative(max_abs(ric_op - data.ricci_nil), max_abs(data.ricci_nil));
  out["nilsoliton"] = std::move(nil);
  out["canonical"] = to_json(ext);
  out["S"] = to_json(expand(ext));
  out["p_beta_residual"] = std::abs(ext.p * ext.beta - 1.0);
  out["einstein"] = t.matrix;
  out["constant"] = t.constant;
  out["einstein_residual"] = t.residual;
  out["extension_derivation"] = to_json(D);
  out["derivation_defect"] = derivation_defect(build_chn(n).structure(), D);
  return out;
}

CanonicalMetric random_tuple(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CanonicalMetric c;
  c.n = n;
  std::vector<double> s(static_cast<std::size_t>(n - 2));
  for (auto& v : s) v = 1.0 + 3.0 * u(rng);
  std::sort(s.begin(), s.end(), std::greater<>());
  c.sigma = Eigen::Map<Vector>(s.data(), n - 2);
  c.x = Vector(n - 1);
  for (int i = 0; i < n - 1; ++i) c.x[i] = 0.8 * u(rng);
  const double z = 0.5 + 2.0 * u(rng);
  c.p = z + (c.x.array().square() / c.sigma_full().array()).sum();
  c.beta = 0.3 + 2.0 * u(rng);
  return c;
}

Json run_random(const Context& ctx) {
  if (!ctx.n) parse_error(ctx.path + ".n", "missing");
  const int n = *ctx.n;
  if (n < 2) throw Error(ErrorKind::InvalidDimension, ctx.path + ".n: must be at least 2");
  const std::uint64_t seed = ctx.seed.value_or(0);
  std::mt19937_64 rng(seed);
  const CanonicalMetric c = random_tuple(n, rng);
  const Automorphism F = random_automorphism(n, rng());
  // F^T S F = expand(c) for the generated S.
  const Automorphism G = inverse(F);
  Json out = header(ctx);
  out["n"] = n;
  out["seed"] = seed;
  out["S"] = to_json(act_on_metric(G, expand(c)));
  out["canonical"] = to_json(c);
  out["automorphism"] = to_json(F);
  return out;
}

Json run_self_test(const Context& ctx, bool& passed) {
  const std::uint64_t seed = ctx.seed.value_or(0);
  std::mt19937_64 rng(seed);
  Json out = header(ctx);
  out["tol"] = ctx.tol;
  out["seed"] = seed;
  Json per_n = Json::array();
  double worst_all = 0.0;
  for (int n : {2, 3}) {
    double worst = 0.0, round_trip = 0.0;
    for (int t = 0; t < 20; ++t) {
      const CanonicalMetric c = random_tuple(n, rng);
      double w = 0.0;
      oracle_residuals(c, &w);
      worst = std::max(worst, w);
      const Matrix S = act_on_metric(random_automorphism(n, rng()), expand(c));
      const CanonicalMetric back = canonicalize(MetricMatrix::make(S)).canonical;
      double rt = std::max({std::abs(back.p - c.p), std::abs(back.beta - c.beta), max_abs(back.x - c.x)});
      if (n > 2) rt = std::max(rt, max_abs(back.sigma - c.sigma));
      round_trip = std::max(round_trip, rt);
    }
    Json entry;
    entry["n"] = n;
    entry["samples"] = 20;
    entry["oracle_residual"] = worst;
    entry["round_trip_error"] = round_trip;
    per_n.push_back(std::move(entry));
    worst_all = std::max(worst_all, worst);
  }
  out["results"] = std::move(per_n);
  out["max_residual"] = worst_all;
  passed = worst_all <= ctx.tol;
  out["passed"] = passed;
  return out;
}

Json error_report(const std::optional<std::string>& command, ErrorKind kind, const std::string& what) {
  Json out;
  out["command"] = command ? Json(*command) : Json(nullptr);
  Json err;
  err["kind"] = to_string(kind);
  err["message"] = what;
  out["error"] = std::move(err);
  out["exit_code"] = exit_code(kind);
  return out;
}

JobResult run_job_at(const Json& job, const Defaults& defaults, const std::string& path) {
  std::optional<std::string> name = defaults.command;
  try {
    if (!job.is_object()) parse_error(path, "expected a job object");
    if (job.contains("command")) {
      if (!job["command"].is_string()) parse_error(path + ".command", "expected a string");
      name = job["command"].get<std::string>();
    }
    if (!name) parse_error(path + ".command", "missing");
    const auto command = parse_command(*name);
    if (!command) parse_error(path + ".command", "unknown command '" + *name + "'");

    Context ctx{job, path, *command, defaults.n, defaults.seed, defaults.tol};
    if (job.contains("n")) ctx.n = as_int(job["n"], path + ".n");
    if (job.contains("seed")) ctx.seed = as_seed(job["seed"], path + ".seed");
    if (job.contains("tol")) ctx.tol = as_number(job["tol"], path + ".tol");
    if (!(ctx.tol > 0.0) || !std::isfinite(ctx.tol))
      throw Error(ErrorKind::Domain, path + ".tol: must be positive");
    if (ctx.n && *ctx.n < 2) throw Error(ErrorKind::InvalidDimension, path + ".n: must be at least 2");

    JobResult result;
    switch (*command) {
      case Command::Canonicalize: result.report = run_canonicalize(ctx); break;
      case Command::Curvature: result.report = run_curvature(ctx, true); break;
      case Command::Ricci: result.report = run_curvature(ctx, false); break;
      case Command::Einstein: result.report = run_einstein(ctx); break;
      case Command::Isometric: result.report = run_isometric(ctx); break;
      case Command::SolitonCheck: result.report = run_soliton(ctx); break;
      case Command::ExtendNilsoliton: result.report = run_extend(ctx); break;
      case Command::RandomMetric: result.report = run_random(ctx); break;
      case Command::SelfTest: {
        bool passed = false;
        result.report = run_self_test(ctx, passed);
        if (!passed) result.exit_code = kExitValidation;
        break;
      }
    }
    return result;
  } catch (const Error& e) {
    return {exit_code(e.kind()), error_report(name, e.kind(), e.what())};
  } catch (const std::exception& e) {
    return {kExitValidation, error_report(name, ErrorKind::Domain, e.what())};
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [key, cmd] : kCommands)
    if (name == key) return cmd;
  return std::nullopt;
}

std::string to_string(Command command) {
  for (const auto& [key, cmd] : kCommands)
    if (cmd == command) return key;
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kExitParse;
    case ErrorKind::Conditioning:
    case ErrorKind::Singular: return kExitConditioning;
    default: return kExitValidation;
  }
}

double resolve_tolerance(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0) || !std::isfinite(*flag)) throw Error(ErrorKind::Parse, "--tol: must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("SOLVGEO_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::Parse, std::string("SOLVGEO_TOL: cannot use '") + env + "'");
    return v;
  }
  return kDefaultTolerance;
}

JobResult run_job(const Json& job, const Defaults& defaults) {
  return run_job_at(job, defaults, "job");
}

BatchResult run_document(const std::string& text, const Defaults& defaults, int threads) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return {kExitParse, dump(error_report(defaults.command, ErrorKind::Parse,
                                          std::string("input: ") + e.what()))};
  }
  if (!doc.is_array()) {
    const JobResult r = run_job_at(doc, defaults, "job");
    return {r.exit_code, dump(r.report)};
  }

  std::vector<JobResult> results(doc.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < doc.size(); i = next++)
      results[i] = run_job_at(doc[i], defaults, "jobs[" + std::to_string(i) + "]");
  };
  const auto count = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(count, doc.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BatchResult out;
  Json reports = Json::array();
  for (auto& r : results) {
    if (out.exit_code == kExitOk) out.exit_code = r.exit_code;
    reports.push_back(std::move(r.report));
  }
  out.text = dump(reports);
  return out;
}

BatchResult run_flags(const Defaults& defaults) {
  const JobResult r = run_job_at(Json::object(), defaults, "job");
  return {r.exit_code, dump(r.report)};
}

}  // namespace solvgeo::cli
