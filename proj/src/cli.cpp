#include "posop/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "posop/adjoint.hpp"
#include "posop/approx.hpp"
#include "posop/errors.hpp"
#include "posop/moment_check.hpp"
#include "posop/preserver.hpp"
#include "posop/text.hpp"

namespace posop::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string domain;
  std::optional<unsigned> degree;
  std::optional<unsigned> order;
  std::size_t budget = Budget{}.max_boxes;
  std::uint64_t seed = PreserverOptions{}.seed;
  std::size_t grid = 101;
  std::string format = "text";
  std::string out;

  std::string operator_text;
  std::string input;
  std::size_t tests = PreserverOptions{}.tests;
  std::string at;
  std::string cell;
  std::string measure;
  bool range = false;
  std::string schedule = "2,4,8,16";
  std::string polys;
  unsigned degree_factor = ApproxOptions{}.degree_factor;
};

struct Report {
  int code = ok;
  std::string text;
  Json json;
  std::string csv;
};

/// Usage problems detected after CLI11 parsing.
struct UsageError : Error {
  using Error::Error;
};

Budget budget_of(const Config& c) {
  Budget b;
  b.max_boxes = c.budget;
  return b;
}

DomainSet domain_of(const Config& c) {
  if (c.domain.empty()) throw UsageError("--domain is required");
  return parse_domain(c.domain);
}

Json point_json(std::span<const Rational> x) {
  Json a = Json::array();
  for (const auto& v : x) a.push_back(v.get_str());
  return a;
}

Json alpha_json(const MultiIndex& alpha) {
  Json a = Json::array();
  for (unsigned e : alpha.exponents()) a.push_back(e);
  return a;
}

Point parse_point(std::string_view text) {
  Point x;
  for (const auto& piece : text::split_top_level(text, ','))
    x.push_back(text::Cursor::at_offset(piece.offset, [&] { return parse_rational(piece.text); }));
  return x;
}

std::vector<std::size_t> parse_schedule(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& piece : text::split_top_level(text, ',')) {
    const Rational r = text::Cursor::at_offset(piece.offset, [&] { return parse_rational(piece.text); });
    if (r.get_den() != 1 || r < 1) throw ParseError("schedule entries must be positive integers", piece.offset);
    out.push_back(r.get_num().get_ui());
  }
  return out;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  return j;
}

// ---------------------------------------------------------------- expand

Report cmd_expand(const Config& c) {
  const Operator op = parse_operator(c.operator_text);
  const unsigned d = c.degree.value_or(3);
  const DiffOpRep rep = extract_coeffs(op, d);
  Report r;
  r.text = "operator: " + to_string(op) + "\ndegree: " + std::to_string(d) + "\n" + to_string(rep);
  r.json = header("expand");
  r.json["operator"] = to_string(op);
  r.json["degree"] = d;
  Json rows = Json::array();
  for (const auto& [alpha, q] : rep.coefficients())
    if (!q.is_zero()) rows.push_back({{"alpha", alpha_json(alpha)}, {"q", to_string(q)}});
  r.json["coefficients"] = rows;
  return r;
}

// ---------------------------------------------------------------- check

const char* kind_name(PreserverVerdict::Kind k) {
  switch (k) {
    case PreserverVerdict::Kind::certified: return "certified";
    case PreserverVerdict::Kind::falsified: return "falsified";
    case PreserverVerdict::Kind::no_counterexample: return "unknown";
  }
  return "";
}

Report cmd_check(const Config& c) {
  const DomainSet s = domain_of(c);
  const Operator op = parse_operator(c.operator_text, s.dimension());
  PreserverOptions options;
  options.budget = budget_of(c);
  options.seed = c.seed;
  options.tests = c.tests;
  if (c.degree) options.max_degree = *c.degree;
  const PreserverVerdict v = check_preserver(op, s, options);
  Report r;
  r.code = v.kind == PreserverVerdict::Kind::certified ? ok : v.kind == PreserverVerdict::Kind::falsified ? falsified : unknown;
  r.text = "operator: " + to_string(op) + "\ndomain: " + to_string(s) + "\n" + to_string(v) + "\n";
  r.json = header("check");
  r.json["operator"] = to_string(op);
  r.json["domain"] = to_string(s);
  r.json["verdict"] = kind_name(v.kind);
  r.json["reason"] = v.reason;
  if (v.p) {
    r.json["p"] = to_string(*v.p);
    r.json["x"] = point_json(v.x);
    r.json["value"] = v.value.get_str();
  }
  r.json["tests_run"] = v.tests_run;
  r.json["seed"] = options.seed;
  return r;
}

// ---------------------------------------------------------------- classify

const char* class_name(Classification k) {
  switch (k) {
    case Classification::yes: return "yes";
    case Classification::no: return "no";
    case Classification::unknown: return "unknown";
  }
  return "";
}

Report cmd_classify(const Config& c) {
  const DomainSet s = domain_of(c);
  const Operator op = parse_operator(c.operator_text, s.dimension());
  const Budget budget = budget_of(c);
  const PositivityClass pos = classify_positivity(op, s, budget);
  const EllipticityClass ell = classify_ellipticity(op, s, budget);
  Report r;
  r.code = pos.kind == Classification::unknown || ell.kind == Classification::unknown ? unknown : ok;
  r.text = "operator: " + to_string(op) + "\ndomain: " + to_string(s) + "\npositivity preserver: " +
           class_name(pos.kind) + " (" + pos.reason + ")\nellipticity preserver: " + class_name(ell.kind) + " (" +
           ell.reason + ")\n";
  r.json = header("classify");
  r.json["operator"] = to_string(op);
  r.json["domain"] = to_string(s);
  r.json["positivity"] = {{"verdict", class_name(pos.kind)}, {"reason", pos.reason}};
  if (pos.zero) r.json["positivity"]["zero"] = point_json(*pos.zero);
  r.json["ellipticity"] = {{"verdict", class_name(ell.kind)}, {"sign", ell.sign}, {"reason", ell.reason}};
  return r;
}

// ---------------------------------------------------------------- moments

Report cmd_moments(const Config& c) {
  const Measure mu = parse_measure(c.input);
  const unsigned order = c.order.value_or(4);
  const MomentSequence seq = moments(mu, order);
  Report r;
  r.json = header("moments");
  r.json["measure"] = to_string(mu);
  r.json["order"] = order;
  Json rows = Json::array();
  r.csv = "alpha,value\n";
  r.text = "measure: " + to_string(mu) + "\n";
  for (const auto& [alpha, v] : seq.values()) {
    std::string idx;
    for (unsigned e : alpha.exponents()) idx += (idx.empty() ? "" : " ") + std::to_string(e);
    r.text += "r(" + idx + ") = " + v.get_str() + "\n";
    r.csv += idx + "," + v.get_str() + "\n";
    rows.push_back({{"alpha", alpha_json(alpha)}, {"value", v.get_str()}});
  }
  r.json["moments"] = rows;
  return r;
}

// ---------------------------------------------------------------- momentcheck

Report cmd_momentcheck(const Config& c) {
  const DomainSet s = domain_of(c);
  const bool is_measure = !c.input.empty() && std::isalpha(static_cast<unsigned char>(c.input.front()));
  std::optional<MomentSequence> seq;
  unsigned m = 0;
  if (is_measure) {
    m = c.order.value_or(2);
    seq = moments(parse_measure(c.input), 2 * m);
  } else {
    seq = parse_moment_sequence(c.input);
    m = c.order.value_or(seq->order() / 2);
  }
  const MomentVerdict v = moment_check(*seq, s, m);
  Report r;
  r.code = v.refuted() ? falsified : ok;
  r.json = header("momentcheck");
  r.json["domain"] = to_string(s);
  r.json["level"] = m;
  Json checks = Json::array();
  for (const auto& ch : v.checks) {
    Json pivots = Json::array();
    for (const auto& p : ch.result.pivots) pivots.push_back(p.get_str());
    Json rows = Json::array();
    for (std::size_t i = 0; i < ch.matrix.size(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < ch.matrix.size(); ++j) row.push_back(ch.matrix(i, j).get_str());
      rows.push_back(row);
    }
    checks.push_back({{"label", ch.label},
                      {"level", ch.level},
                      {"psd", ch.result.psd},
                      {"matrix", rows},
                      {"pivots", pivots}});
    r.text += "level " + std::to_string(ch.level) + " " + ch.label + (ch.result.psd ? ": psd" : ": not psd") + "\n" +
              to_string(ch.matrix);
    if (!r.text.empty() && r.text.back() != '\n') r.text += '\n';
  }
  r.text += to_string(v) + "\n";
  r.json["checks"] = checks;
  r.json["verdict"] = v.refuted() ? "refuted" : "consistent";
  r.json["order"] = v.order;
  r.json["necessary_only"] = v.necessary_only;
  if (v.refuted()) {
    r.json["failed_matrix"] = v.failed_matrix;
    r.json["certificate"] = point_json(v.certificate);
    r.json["value"] = v.value.get_str();
  }
  return r;
}

// ---------------------------------------------------------------- adjoint

Report cmd_adjoint(const Config& c) {
  const Operator op = parse_operator(c.operator_text);
  Report r;
  r.json = header("adjoint");
  r.json["operator"] = to_string(op);
  r.text = "operator: " + to_string(op) + "\n";
  if (!c.measure.empty() || !c.at.empty()) {
    const Measure image = c.measure.empty() ? mu_x(op, parse_point(c.at)) : adjoint_apply(op, parse_measure(c.measure));
    const std::string label = c.measure.empty() ? "mu_x at (" + c.at + ")" : "T(" + c.measure + ")";
    r.text += label + ": " + to_string(image) + "\n";
    r.json["input"] = c.measure.empty() ? Json{{"x", point_json(parse_point(c.at))}} : Json{{"measure", c.measure}};
    r.json["image"] = to_string(image);
    if (!c.cell.empty()) {
      const Cell a = parse_cell(c.cell);
      const Rational value = measure_of_set(image, a);
      r.text += "measure of " + to_string(a) + ": " + value.get_str() + "\n";
      r.json["cell"] = to_string(a);
      r.json["cell_measure"] = value.get_str();
    }
  }
  if (c.range || (c.measure.empty() && c.at.empty())) {
    const unsigned d = c.degree.value_or(4);
    const FiniteRange fr = finite_range_detect(op, d);
    const char* kind = fr.kind == FiniteRange::Kind::finite_rank       ? "finite_rank"
                       : fr.kind == FiniteRange::Kind::rank_stabilized ? "rank_stabilized"
                                                                       : "not_detected";
    r.text += std::string("range: ") + kind + " (" + fr.reason + ")\n";
    Json basis = Json::array();
    for (const auto& t : fr.basis) {
      r.text += "  " + to_string(t.f) + " ; " + to_string(t.nu) + "\n";
      basis.push_back({{"f", to_string(t.f)}, {"nu", to_string(t.nu)}});
    }
    r.json["range"] = {{"kind", kind}, {"reason", fr.reason}, {"ranks", fr.ranks}, {"basis", basis}};
  }
  return r;
}

// ---------------------------------------------------------------- approx

std::vector<std::pair<std::string, Polynomial>> approx_polys(const Config& c, std::size_t n) {
  std::vector<std::pair<std::string, Polynomial>> out;
  if (c.polys.empty()) {
    for (const char* t : {"1", "x0", "x0^2", "x0^3 - x0"}) out.emplace_back(t, parse_polynomial(t, n));
    return out;
  }
  for (const auto& piece : text::split_top_level(c.polys, ';')) {
    Polynomial p = text::Cursor::at_offset(piece.offset, [&] { return parse_polynomial(piece.text, n); });
    out.emplace_back(to_string(p), std::move(p));
  }
  return out;
}

Report cmd_approx(const Config& c) {
  const DomainSet s = domain_of(c);
  const Operator op = parse_operator(c.operator_text, s.dimension());
  ApproxOptions options;
  options.schedule = parse_schedule(c.schedule);
  options.grid = c.grid;
  options.budget = budget_of(c);
  options.degree_factor = c.degree_factor;
  if (c.degree) options.degree = [d = *c.degree](std::size_t) { return d; };
  const ConvergenceTable table = converge_report(op, s, approx_polys(c, s.dimension()), options);

  Report r;
  r.code = table.bound_violated() ? falsified : ok;
  r.csv = table.to_csv();
  r.json = header("approx");
  r.json["operator"] = to_string(op);
  r.json["domain"] = to_string(s);
  r.json["grid"] = options.grid;
  Json acc = Json::array();
  for (const auto& [rr, a] : table.accuracy) {
    const char* status = a.status == AccuracyCheck::Status::pass ? "pass"
                         : a.status == AccuracyCheck::Status::fail ? "fail"
                                                                   : "skipped";
    acc.push_back({{"r", rr},
                   {"status", status},
                   {"max_deviation", a.max_deviation.get_str()},
                   {"threshold", a.threshold.get_str()},
                   {"reason", a.reason}});
  }
  r.json["accuracy"] = acc;
  Json rows = Json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"r", row.r},
                    {"D", row.diameter.get_str()},
                    {"N", row.degree},
                    {"poly-id", row.poly_id},
                    {"measured_error", row.measured_error.get_str()},
                    {"bound", row.bound.get_str()},
                    {"bound_claimed", row.bound_claimed},
                    {"pass", row.pass}});
  r.json["rows"] = rows;
  r.json["note"] = "accuracy is checked on the grid only, not uniformly on S";
  std::ostringstream text;
  text << "operator: " << to_string(op) << "\ndomain: " << to_string(s) << "\n";
  for (const auto& [rr, a] : table.accuracy) text << "r = " << rr << ": accuracy " << a.reason << "\n";
  text << r.csv;
  if (table.bound_violated()) text << "claimed bound violated\n";
  r.text = text.str();
  return r;
}

// ---------------------------------------------------------------- repro

Report cmd_repro() {
  const auto cases = run_repro();
  Report r;
  r.json = header("repro");
  Json scen = Json::array();
  for (const auto& rc : cases) {
    r.text += rc.scenario + ": " + (rc.ok ? "match" : "MISMATCH") + "\n";
    for (const auto& v : rc.values) r.text += "  " + v + "\n";
    for (const auto& m : rc.mismatches) r.text += "  mismatch: " + m + "\n";
    if (!rc.ok) r.code = falsified;
    scen.push_back({{"scenario", rc.scenario}, {"match", rc.ok}, {"values", rc.values}, {"mismatches", rc.mismatches}});
  }
  r.json["scenarios"] = scen;
  r.json["all_match"] = r.code == ok;
  return r;
}

void write_out(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << body;
}

}  // namespace

// ---------------------------------------------------------------- golden scenarios

namespace {

class Golden {
 public:
  explicit Golden(std::string scenario) { c_.scenario = std::move(scenario); }

  template <class T>
  void expect(const std::string& what, const T& got, const T& want, const std::string& shown) {
    c_.values.push_back(what + " = " + shown);
    if (!(got == want)) {
      c_.ok = false;
      c_.mismatches.push_back(what);
    }
  }
  void expect_true(const std::string& what, bool cond) {
    c_.values.push_back(what + (cond ? ": yes" : ": no"));
    if (!cond) {
      c_.ok = false;
      c_.mismatches.push_back(what);
    }
  }
  ReproCase done() { return std::move(c_); }

 private:
  ReproCase c_;
};

Polynomial upoly(const char* text) { return parse_polynomial(text, 1); }

void expect_falsified(Golden& g, const std::string& what, const PreserverVerdict& v, const Polynomial& p,
                      const Rational& x, const Rational& value) {
  const bool shape = v.kind == PreserverVerdict::Kind::falsified && v.p && v.x.size() == 1;
  g.expect_true(what + " falsified", shape);
  if (!shape) return;
  g.expect(what + " witness p", *v.p, p, to_string(*v.p));
  g.expect(what + " witness x", v.x[0], x, v.x[0].get_str());
  g.expect(what + " witness value", v.value, value, v.value.get_str());
}

ReproCase constant_moments_half_line() {
  Golden g("constant moments on [2,inf)");
  const DomainSet s = DomainSet::half_line(2);
  const MomentVerdict v = moment_check(parse_moment_sequence("1,1"), s, 0);
  g.expect_true("constant sequence refuted on [2,inf)", v.refuted());
  g.expect("refuting level", v.order, 0u, std::to_string(v.order));
  g.expect("localizer value", v.value, Rational(-1), v.value.get_str());

  const Operator shift = parse_operator("endo(x0 + 1)");
  const GlobalCheck gc = global_preserver_check(extract_coeffs(shift, 4), s, 0);
  g.expect_true("E_{X+1} moment test refuted", gc.verdict.refuted());
  g.expect_true("refutation not sound without 0 in S", !gc.refutation_sound);
  g.expect_true("E_{X+1} certified preserver on [2,inf)",
                check_preserver(shift, s).kind == PreserverVerdict::Kind::certified);

  const MomentVerdict line = moment_check(moments(Measure::dirac({Rational(1)}), 8), DomainSet::real_line(), 4);
  g.expect_true("moments of dirac(1) consistent on R", !line.refuted());
  g.expect("consistent up to", line.order, 4u, std::to_string(line.order));
  return g.done();
}

ReproCase lebesgue_coefficients() {
  Golden g("Lebesgue coefficients on [-1,0]");
  const unsigned d = 4;
  const Measure leb = Measure::lebesgue(Interval{-1, 0});
  DiffOpRep rep(1, d);
  for (unsigned i = 0; i <= d; ++i) {
    const Rational ri = integrate(leb, power(upoly("x0"), i)) / Rational(factorial(i));
    rep.set(MultiIndex{i}, Polynomial::constant(1, ri));
  }
  const Polynomial image = apply(rep, upoly("x0 + 1"));
  const Rational value = image(Point{Rational(-1)});
  g.expect("Phi(X+1)(-1)", value, Rational(-1, 2), value.get_str());
  const DomainSet s = DomainSet::interval(-1, 0);
  expect_falsified(g, "check on [-1,0]", check_preserver(to_operator(rep), s), upoly("x0 + 1"), -1, Rational(-1, 2));
  const GlobalCheck gc = global_preserver_check(rep, s, 2);
  g.expect_true("alpha! r_alpha is consistent on [-1,0]", !gc.verdict.refuted());
  return g.done();
}

ReproCase localized_contraction() {
  Golden g("E_{X/2} localized at 1");
  const Operator half = parse_operator("endo(x0/2)");
  const DomainSet s = DomainSet::interval(-1, 1);
  const DiffOpRep local = localize_at(extract_coeffs(half, 4), Point{Rational(1)});
  const Polynomial image = apply(local, upoly("x0 + 1"));
  g.expect("Phi_1(X+1)", image, upoly("x0 + 1/2"), to_string(image));
  g.expect_true("E_{X/2} certified on [-1,1]", check_preserver(half, s).kind == PreserverVerdict::Kind::certified);
  expect_falsified(g, "Phi_1 on [-1,1]", check_preserver(to_operator(local), s), upoly("x0 + 1"), -1,
                   Rational(-1, 2));
  return g.done();
}

ReproCase signed_rank_representation() {
  Golden g("two finite-rank representations");
  const Operator a = parse_operator("rank{(x0 + 2; lebesgue([-1,1])), (-x0^2; lebesgue([0,1]))}");
  const Operator b = parse_operator("rank{(x0 + 2; lebesgue([-1,0])), (x0 + 2 - x0^2; lebesgue([0,1]))}");
  const std::pair<const char*, const char*> goldens[] = {
      {"1", "-x0^2 + 2*x0 + 4"}, {"x0", "-1/2*x0^2"}, {"x0^2", "-1/3*x0^2 + 2/3*x0 + 4/3"}};
  for (const auto& [p, want] : goldens) {
    const Polynomial pa = apply(a, upoly(p));
    const Polynomial pb = apply(b, upoly(p));
    g.expect(std::string("Phi(") + p + ")", pa, upoly(want), to_string(pa));
    g.expect(std::string("second representation of Phi(") + p + ")", pb, pa, to_string(pb));
  }
  g.expect_true("representations equal as operators", finite_rank_equal(a, b) == std::optional<bool>(true));
  const DomainSet s = DomainSet::interval(-1, 1);
  g.expect_true("first representation has no structural certificate", !structural_certificate(a, s));
  g.expect_true("second representation is certified", structural_certificate(b, s).has_value());
  return g.done();
}

}  // namespace

std::vector<ReproCase> run_repro() {
  return {constant_moments_half_line(), lebesgue_coefficients(), localized_contraction(), signed_rank_representation()};
}

// ---------------------------------------------------------------- entry

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positivity preservers on polynomial rings: representation, moments, adjoints, approximation"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--domain", c.domain, "domain S: [a,b], [a,b]x[c,d], [c,inf), R, R^n");
  app.add_option("--degree", c.degree, "truncation / test degree / indicator degree");
  app.add_option("--order", c.order, "moment order (moments) or matrix level m (momentcheck)");
  app.add_option("--budget", c.budget, "subdivision box budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "seed of the counterexample search");
  app.add_option("--grid", c.grid, "grid points per axis")->check(CLI::Range(2, 100000));
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", c.out, "output file (approx: stem for .csv and .json)");

  auto* expand = app.add_subcommand("expand", "differential operator coefficients q_alpha");
  expand->add_option("operator", c.operator_text)->required();
  auto* check = app.add_subcommand("check", "is the operator an S-nonnegativity preserver");
  check->add_option("operator", c.operator_text)->required();
  check->add_option("--tests", c.tests, "number of test polynomials")->check(CLI::PositiveNumber);
  auto* classify = app.add_subcommand("classify", "positivity and ellipticity classification");
  classify->add_option("operator", c.operator_text)->required();
  auto* moments_cmd = app.add_subcommand("moments", "moments of a measure");
  moments_cmd->add_option("measure", c.input)->required();
  auto* momentcheck = app.add_subcommand("momentcheck", "Hankel and localizing matrix test");
  momentcheck->add_option("input", c.input, "moment sequence `1,1,1` or measure")->required();
  auto* adjoint = app.add_subcommand("adjoint", "adjoint measures and finite-range detection");
  adjoint->add_option("operator", c.operator_text)->required();
  adjoint->add_option("--at", c.at, "point x for mu_x");
  adjoint->add_option("--measure", c.measure, "measure to transform");
  adjoint->add_option("--cell", c.cell, "cell A for mu(A)");
  adjoint->add_flag("--range", c.range, "run finite-range detection");
  auto* approx = app.add_subcommand("approx", "simple-preserver approximation and error bounds");
  approx->add_option("operator", c.operator_text)->required();
  approx->add_option("--schedule", c.schedule, "cells per axis, comma separated");
  approx->add_option("--polys", c.polys, "test polynomials separated by ';'");
  approx->add_option("--degree-factor", c.degree_factor, "indicator degree N = factor * r")->check(CLI::PositiveNumber);
  auto* repro = app.add_subcommand("repro", "reproduce the worked examples against golden values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  }

  try {
    Report r;
    if (*expand) r = cmd_expand(c);
    else if (*check) r = cmd_check(c);
    else if (*classify) r = cmd_classify(c);
    else if (*moments_cmd) r = cmd_moments(c);
    else if (*momentcheck) r = cmd_momentcheck(c);
    else if (*adjoint) r = cmd_adjoint(c);
    else if (*approx) r = cmd_approx(c);
    else if (*repro) r = cmd_repro();

    if (c.format == "csv" && r.csv.empty()) throw UsageError("csv output is available for approx and moments only");
    const std::string body = c.format == "json" ? r.json.dump(2) + "\n" : c.format == "csv" ? r.csv : r.text;
    if (*approx && !c.out.empty()) {
      std::string stem = c.out;
      if (stem.ends_with(".csv") || stem.ends_with(".json")) stem = stem.substr(0, stem.rfind('.'));
      write_out(stem + ".csv", r.csv);
      write_out(stem + ".json", r.json.dump(2) + "\n");
      out << body;
    } else if (!c.out.empty()) {
      write_out(c.out, body);
    } else {
      out << body;
    }
    return r.code;
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position() << ": " << e.message() << "\n";
    return parse;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const DimensionError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const InsufficientOrderError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    err << "undecided: " << e.what() << "\n";
    return unknown;
  }
}

}  // namespace posop::cli
