// heis: command-line front end for the lattice geometry, covering,
// separation and ergodic experiments.
//
// Exit codes: 0 success, 2 hypothesis violated, 3 resource cap, 64 usage.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heis/heis.hpp"

using namespace heis;

namespace {

struct Opts {
  std::size_t n = 1;
  std::int64_t k = 1;
  std::int64_t k_max = 0;
  std::string sigma = "e1";
  double t = 1.0;
  double rho = 0.5;
  std::string eps = "1/2";
  std::string delta = "1/2";
  std::int64_t chi = 1;
  std::int64_t kappa = 1;
  double R = 0.0;
  double C = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t balls = 100;
  std::int64_t modulus = 3;
  std::string masses = "uniform";
  std::string action;
  std::size_t point = 0;
  bool list = false;
  std::string out;
  std::string format = "json";
  unsigned workers = 0;
  std::uint64_t cap = kDefaultCap;
};

struct Output {
  Json result = Json::object();
  std::optional<CsvTable> table;
  std::string text;
};

Json config_json(const std::string& cmd, const Opts& o, const std::vector<std::string>& used) {
  Json all{{"n", o.n},         {"k", o.k},           {"k_max", o.k_max},     {"sigma", o.sigma},
           {"t", o.t},         {"rho", o.rho},       {"eps", o.eps},         {"delta", o.delta},
           {"chi", o.chi},     {"kappa", o.kappa},   {"R", o.R},             {"C", o.C},
           {"seed", o.seed},   {"trials", o.trials}, {"balls", o.balls},     {"modulus", o.modulus},
           {"masses", o.masses}, {"action", o.action}, {"point", o.point},   {"list", o.list},
           {"workers", o.workers}, {"cap", o.cap}};
  Json cfg = Json::object();
  for (const auto& key : used) cfg[key] = all.at(key);
  (void)cmd;
  return cfg;
}

std::string rat_text(const Rational& q) { return to_string(q) + " (" + fmt_double(to_double(q)) + ")"; }

// ---------------------------------------------------------------------------

Output cmd_ball(const Opts& o) {
  Output r;
  if (o.list) {
    const BallTable tb = enumerate_ball(o.n, o.k, nullptr, o.cap);
    Json pts = Json::array();
    CsvTable t;
    for (std::size_t j = 0; j < o.n; ++j) t.header.push_back("a" + std::to_string(j + 1));
    for (std::size_t j = 0; j < o.n; ++j) t.header.push_back("b" + std::to_string(j + 1));
    t.header.push_back("m");
    for (const auto& p : tb.points) {
      pts.push_back(to_json(p));
      std::vector<std::string> row;
      for (auto v : p.a) row.push_back(std::to_string(v));
      for (auto v : p.b) row.push_back(std::to_string(v));
      row.push_back(std::to_string(p.m));
      t.rows.push_back(row);
    }
    r.result = {{"cardinality", tb.cardinality}, {"points", pts}};
    r.table = t;
    r.text = std::to_string(tb.cardinality);
    return r;
  }
  const auto c = ball_cardinality(o.n, o.k, o.cap);
  r.result = {{"cardinality", c}};
  r.table = CsvTable{{"k", "cardinality"}, {{std::to_string(o.k), std::to_string(c)}}};
  r.text = std::to_string(c);
  return r;
}

Output cmd_doubling(const Opts& o) {
  Output r;
  const std::int64_t km = o.k_max > 0 ? o.k_max : o.k;
  const auto rows = doubling_table(o.n, km, o.cap);
  Json arr = Json::array();
  CsvTable t{{"k", "card", "card_sq", "ratio"}, {}};
  double dmax = 0.0;
  std::ostringstream txt;
  for (const auto& row : rows) {
    arr.push_back({{"k", row.k}, {"card", row.card}, {"card_sq", row.card_sq}, {"ratio", row.ratio}});
    t.rows.push_back({std::to_string(row.k), std::to_string(row.card), std::to_string(row.card_sq), fmt_double(row.ratio)});
    dmax = std::max(dmax, row.ratio);
    txt << row.k << ' ' << row.card << ' ' << row.card_sq << ' ' << fmt_double(row.ratio) << '\n';
  }
  // Spread of the last five ratios relative to their minimum.
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = rows.size() >= 5 ? rows.size() - 5 : 0; i < rows.size(); ++i) {
    lo = std::min(lo, rows[i].ratio);
    hi = std::max(hi, rows[i].ratio);
  }
  r.result = {{"rows", arr}, {"D_emp", dmax}, {"plateau_spread", hi / lo - 1.0}};
  r.table = t;
  r.text = txt.str();
  return r;
}

Output cmd_folner(const Opts& o) {
  Output r;
  const LatticePoint s = parse_word(o.n, o.sigma);
  const std::int64_t hi = o.k_max > 0 ? o.k_max : o.k;
  Json arr = Json::array();
  CsvTable t{{"k", "sym_diff", "card", "ratio"}, {}};
  std::ostringstream txt;
  for (std::int64_t k = o.k; k <= hi; ++k) {
    const FolnerRow row = folner_ratio(o.n, k, s, o.cap);
    arr.push_back({{"k", k}, {"sym_diff", row.sym_diff}, {"card", row.card}, {"ratio", to_json(row.ratio)}});
    t.rows.push_back({std::to_string(k), std::to_string(row.sym_diff), std::to_string(row.card), fmt_double(to_double(row.ratio))});
    txt << k << ' ' << rat_text(row.ratio) << '\n';
  }
  r.result = {{"sigma", to_json(s)}, {"rows", arr}};
  r.table = t;
  r.text = txt.str();
  return r;
}

Output cmd_boundary(const Opts& o) {
  Output r;
  const BoundaryCount c = for_each_t_boundary_point(o.n, o.k, o.t, [](const LatticePoint&) {}, o.cap);
  r.result = {{"inside", c.inside}, {"by_witness", c.by_witness}, {"by_minimizer", c.by_minimizer},
              {"minimizer_out", c.minimizer_out}, {"ball_cardinality", ball_cardinality(o.n, o.k, o.cap)}};
  r.text = std::to_string(c.inside);
  return r;
}

Output cmd_net(const Opts& o) {
  Output r;
  const NetResult net = covering_net(o.n, o.rho, o.cap);
  Json centers = Json::array();
  for (const auto& c : net.centers) centers.push_back(to_json(c));
  r.result = {{"N", net.N}, {"grid_points", net.grid_points}, {"spacing", net.spacing}, {"verified", net.verified},
              {"centers", centers}};
  r.text = std::to_string(net.N);
  return r;
}

Output cmd_bcp(const Opts& o) {
  Output r;
  const std::size_t trials = o.trials ? o.trials : 10;
  std::size_t worst = 0;
  bool all_cover = true;
  CsvTable t{{"trial", "balls", "selected", "multiplicity", "covers"}, {}};
  for (std::size_t i = 0; i < trials; ++i) {
    SplitMix64 g(stream_seed(o.seed, i));
    const Carpet c = random_lattice_carpet(g, o.n, std::max<std::int64_t>(o.k, 1) * 2, o.balls, std::max<std::int64_t>(o.k, 1));
    const auto sel = besicovitch_select(c);
    std::vector<LatticePoint> centres;
    for (const auto& b : c.balls) centres.push_back(b.center);
    const bool cov = covers(sel, centres);
    const std::size_t mult = subcover_multiplicity(sel, o.cap);
    worst = std::max(worst, mult);
    all_cover = all_cover && cov;
    t.rows.push_back({std::to_string(i), std::to_string(c.balls.size()), std::to_string(sel.size()), std::to_string(mult),
                      cov ? "1" : "0"});
  }
  r.result = {{"trials", trials}, {"max_multiplicity", worst}, {"all_cover", all_cover}};
  r.table = t;
  r.text = "max multiplicity " + std::to_string(worst) + (all_cover ? ", all carpets covered" : ", COVER FAILURE");
  return r;
}

Output cmd_colour(const Opts& o) {
  Output r;
  SplitMix64 g(o.seed);
  const std::int64_t rk = std::max<std::int64_t>(o.k, 1);
  const Carpet c = random_lattice_carpet(g, o.n, 2 * rk, o.balls, rk);
  const auto seq = besicovitch_select(c);
  const ColourResult col = colour_partition(seq, o.chi);
  Json classes = Json::array();
  bool separated = true;
  for (const auto& cls : col.classes) {
    const bool ok = is_well_separated(pick(seq, cls));
    separated = separated && ok;
    classes.push_back({{"size", cls.size()}, {"well_separated", ok}});
  }
  r.result = {{"selected", seq.size()}, {"palette", col.palette}, {"overflow", col.overflow}, {"classes", classes},
              {"all_well_separated", separated}};
  r.text = "palette " + std::to_string(col.palette) + (col.overflow ? " (exceeds chi)" : "") +
           (separated ? ", classes well-separated" : ", SEPARATION FAILURE");
  return r;
}

Output cmd_boundgen(const Opts& o, bool eps_set, bool delta_set) {
  Output r;
  const SyntheticInstance inst = random_boundgen_instance(o.seed);
  const Rational eps = eps_set ? parse_rational(o.eps) : inst.eps;
  const Rational delta = delta_set ? parse_rational(o.delta) : inst.delta;
  Json hyp = to_json(boundgen_hypotheses(inst.nu, inst.F, inst.stack, eps, delta, inst.t, inst.chi));
  const BoundgenResult res = boundgen_select(inst.nu, inst.F, inst.stack, eps, delta, inst.t, inst.chi);
  Json stages = Json::array();
  for (const auto& st : res.stages)
    stages.push_back({{"l", st.l}, {"covered", to_json(st.covered)}, {"e_mass", to_json(st.e_mass)},
                      {"selected_mass", to_json(st.selected_mass)}, {"palette", st.palette},
                      {"well_separable_bound", st.well_separable_bound}});
  Json V = Json::array();
  for (const auto& b : res.V) V.push_back(to_json(b));
  r.result = {{"instance", {{"scales", inst.scales}, {"t", inst.t}, {"eps", to_json(eps)}, {"delta", to_json(delta)},
                            {"chi", inst.chi}, {"points", inst.F.size()}}},
              {"hypotheses", hyp},
              {"p", res.p},
              {"k", res.k},
              {"r_sq", res.r_sq},
              {"V", V},
              {"stages", stages},
              {"post_i", res.post_i},
              {"post_ii", res.post_ii},
              {"post_ii_mass", to_json(res.post_ii_mass)},
              {"post_ii_half", to_json(res.post_ii_half)}};
  r.text = "k = " + std::to_string(res.k) + ", |V| = " + std::to_string(res.V.size()) +
           ", post (i) " + (res.post_i ? "ok" : "FAIL") + ", post (ii) " + (res.post_ii ? "ok" : "FAIL");
  return r;
}

Output cmd_height(const Opts& o) {
  Output r;
  HeightParams hp;
  hp.chi = o.chi;
  hp.kappa = o.kappa;
  hp.eps = parse_rational(o.eps);
  hp.delta = parse_rational(o.delta);
  if (o.R > 0.0) hp.R = o.R;
  const StackHeight s = stack_height(hp);
  Json q = Json::array(), p = Json::array();
  for (const auto& v : s.q_list) q.push_back(v.str());
  for (const auto& v : s.p_list) p.push_back(v.str());
  r.result = {{"q", s.q.str()},
              {"q_list", q},
              {"p_list", p},
              {"stated_bound", s.stated_bound},
              {"proof_bound", s.proof_bound},
              {"stated_holds", s.stated_holds},
              {"proof_holds", s.proof_holds}};
  r.text = s.q.str();
  return r;
}

Output cmd_lss(const Opts& o) {
  Output r;
  const double R = o.R > 0.0 ? o.R : 1e4;
  const double eps = to_double(parse_rational(o.eps));
  const std::size_t trials = o.trials ? o.trials : 1000;
  const LssSweep s = lss_sweep(o.n, R, eps, trials, o.seed);
  const std::size_t family = std::min<std::size_t>(trials, 50);
  const LssThreshold th = lss_empirical_threshold(o.n, eps, family, o.seed);
  Json failing = Json::array();
  for (auto v : s.failing_seeds) failing.push_back(v);
  r.result = {{"lemma", "large-scale separation"},
              {"params", {{"n", o.n}, {"R", R}, {"eps", eps}}},
              {"bound", lss_bound(eps)},
              {"trials", trials},
              {"failures", s.failures},
              {"min_gap", s.min_gap},
              {"failing_seeds", failing},
              {"empirical_constants", {{"R_bar", th.R_bar}, {"bracketed", th.bracketed}, {"family", th.family}}}};
  r.text = std::to_string(s.failures) + " failures in " + std::to_string(trials) + ", min gap " + fmt_double(s.min_gap) +
           ", R_bar " + fmt_double(th.R_bar);
  return r;
}

Output cmd_closeball(const Opts& o) {
  Output r;
  CloseballCalibration cal;
  if (o.R > 0.0) {
    cal.R = o.R;
    cal.C = o.C > 0.0 ? o.C : 0.5;
  } else if (o.C > 0.0) {
    cal = closeball_measure_R(o.n, o.C, 32, o.seed);
  } else {
    cal = closeball_calibrate(o.n, 32, o.seed);
  }
  CloseballParams prm;
  prm.R = cal.R;
  prm.C = cal.C;
  prm.samples = 1024;
  const std::size_t trials = o.trials ? o.trials : 100;
  std::size_t failures = 0;
  Json certs = Json::array();
  SplitMix64 g(stream_seed(o.seed, 1));
  const std::size_t dim = 2 * o.n + 1;
  for (std::size_t i = 0; i < trials; ++i) {
    const double rr = std::exp(g.uniform(-3.0, 3.0));
    ContinuousPoint pp = ContinuousPoint::identity(o.n);
    for (auto& z : pp.z) z = Complex(g.uniform(-5, 5), g.uniform(-5, 5));
    pp.tau = g.uniform(-5, 5);
    const double rho = 2.0 * rr * cal.R * g.uniform(1.01, 4.0);
    const ContinuousPoint p = multiply(detail::sphere_point(detail::random_unit(g, dim), rho), pp);
    prm.seed = stream_seed(o.seed, 1000 + i);
    const CloseballResult res = closeball_witness(p, pp, rr, prm);
    if (!res.verified) {
      ++failures;
      Json c{{"p", to_json(p)}, {"p_prime", to_json(pp)}, {"r", rr}, {"q", to_json(res.q)}, {"q_max", res.q_max}};
      if (res.violation) c["violation"] = to_json(*res.violation);
      certs.push_back(c);
    }
  }
  r.result = {{"lemma", "inner ball"},
              {"params", {{"n", o.n}}},
              {"trials", trials},
              {"failures", failures},
              {"empirical_constants", {{"R", cal.R}, {"C", cal.C}}},
              {"certificates", certs}};
  r.text = std::to_string(failures) + " failures in " + std::to_string(trials) + " at R = " + fmt_double(cal.R) +
           ", C = " + fmt_double(cal.C);
  return r;
}

Output cmd_intersect(const Opts& o) {
  Output r;
  const double R = o.R > 0.0 ? o.R : 1e4;
  const std::size_t trials = o.trials ? o.trials : 1000;
  const std::size_t max_chain = o.k_max > 0 ? static_cast<std::size_t>(o.k_max) : 4;
  const IntersectionReport rep = intersection_search(o.n, R, trials, max_chain, o.seed, o.workers);
  Json certs = Json::array();
  for (const auto& c : rep.certificates)
    certs.push_back({{"length", c.config.points.size()}, {"seed", c.seed}, {"config", to_json(c.config)},
                     {"witness", to_json(c.witness)}});
  r.result = {{"lemma", "intersection dimension"},
              {"params", {{"n", o.n}, {"R", R}, {"max_chain", max_chain}}},
              {"trials", trials},
              {"longest_chain_found", rep.longest},
              {"reached", rep.reached},
              {"certificates", certs}};
  r.text = "longest chain with a common point: " + std::to_string(rep.longest);
  return r;
}

WeightedAction action_of(const Opts& o) {
  if (!o.action.empty()) return load_action(o.action);
  Json spec{{"type", "quotient"}, {"n", o.n}, {"m", o.modulus}, {"masses", o.masses}};
  return action_from_json(spec);
}

Output cmd_ergodic(const Opts& o, bool sigma_set) {
  Output r;
  const WeightedAction w = action_of(o);
  if (o.point >= w.size()) throw std::invalid_argument("--point outside X");
  std::vector<Rational> f(w.size(), Rational(0));
  f[o.point] = 1;
  const Rational target = integral(w, f);
  const std::int64_t km = o.k_max > 0 ? o.k_max : o.k;
  CsvTable t{{"k", "x_id", "value", "abs_err"}, {}};
  Json maxerr = Json::array();
  for (std::int64_t k = 1; k <= km; ++k) {
    double worst = 0.0;
    const auto avgs = weighted_averages(w, f, k, o.cap);
    for (std::size_t x = 0; x < avgs.size(); ++x) {
      const AverageResult& a = avgs[x];
      const double err = std::abs(to_double(a.value - target));
      worst = std::max(worst, err);
      t.rows.push_back({std::to_string(k), std::to_string(x), fmt_double(to_double(a.value)), fmt_double(err)});
    }
    maxerr.push_back({{"k", k}, {"max_abs_err", worst}});
  }
  Json nsfc = Json::array();
  if (sigma_set) {
    const LatticePoint s = parse_word(w.n, o.sigma);
    for (std::int64_t k = 1; k <= km; ++k) nsfc.push_back({{"k", k}, {"ratio_at_0", to_json(nsfc_ratio(w, k, s, 0, o.cap))}});
  }
  r.result = {{"action", {{"kind", w.kind == WeightedAction::Kind::Quotient ? "quotient" : "torus"},
                          {"points", w.size()},
                          {"transitive", is_transitive(w)}}},
              {"f", "indicator of point " + std::to_string(o.point)},
              {"integral", to_json(target)},
              {"max_abs_err", maxerr},
              {"nsfc", nsfc}};
  r.table = t;
  r.text = t.str();
  return r;
}

Output cmd_maximal(const Opts& o) {
  Output r;
  const WeightedAction w = action_of(o);
  const std::int64_t km = o.k_max > 0 ? o.k_max : 4;
  const Rational eps = parse_rational(o.eps);
  const std::size_t trials = o.trials ? o.trials : 100;
  const std::size_t C = measure_besicovitch_constant(w.n, km, 20, 40, o.seed, o.cap);
  const Rational D = measure_doubling_constant(w.n, km, o.cap);
  std::size_t exp_fail = 0, lemma_fail = 0;
  Rational worst_ratio = 0;
  SplitMix64 g(stream_seed(o.seed, 7));
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<Rational> f(w.size());
    for (auto& v : f) v = Rational(g.uniform_int(-20, 20), g.uniform_int(1, 7));
    const MaximalExperiment e = maximal_inequality_experiment(w, f, eps, km, C, D, o.cap);
    if (!e.holds) ++exp_fail;
    if (e.bound > 0) worst_ratio = std::max(worst_ratio, Rational(e.lhs / e.bound));
  }
  const auto ball10 = enumerate_ball(w.n, 10, nullptr, o.cap).points;
  for (std::size_t i = 0; i < trials; ++i) {
    LatticeFunction a, b;
    const auto pick_pt = [&] {
      return ball10[static_cast<std::size_t>(g.uniform_int(0, static_cast<std::int64_t>(ball10.size()) - 1))];
    };
    for (std::int64_t j = g.uniform_int(1, 15); j > 0; --j) a[pick_pt()] = Rational(g.uniform_int(-10, 10), 4);
    for (std::int64_t j = g.uniform_int(1, 15); j > 0; --j) b[pick_pt()] = Rational(g.uniform_int(0, 10), 4);
    if (!discrete_maximal_check(a, b, g.uniform_int(1, 3), eps, C, o.cap).holds) ++lemma_fail;
  }
  r.result = {{"lemma", "maximal inequality"},
              {"params", {{"points", w.size()}, {"k_max", km}, {"eps", to_json(eps)}}},
              {"trials", trials},
              {"empirical_constants", {{"C", C}, {"D", to_json(D)}}},
              {"experiment_failures", exp_fail},
              {"lemma_failures", lemma_fail},
              {"max_lhs_over_bound", to_json(worst_ratio)}};
  r.text = "experiment failures " + std::to_string(exp_fail) + ", lemma failures " + std::to_string(lemma_fail) +
           " in " + std::to_string(trials) + " trials (C = " + std::to_string(C) + ", D = " + rat_text(D) + ")";
  return r;
}

std::string render(const std::string& cmd, const Opts& o, const Json& cfg, const Output& out) {
  if (o.format == "text") return out.text.empty() || out.text.back() == '\n' ? out.text : out.text + "\n";
  if (o.format == "csv") {
    const std::vector<std::string> pre{"command=" + cmd, "version=" + std::string(kVersion), "config=" + cfg.dump()};
    if (out.table) return out.table->str(pre);
    CsvTable t{{"key", "value"}, {}};
    for (const auto& [key, v] : out.result.items())
      if (v.is_primitive()) t.rows.push_back({key, v.is_string() ? v.get<std::string>() : v.dump()});
    return t.str(pre);
  }
  Json doc{{"command", cmd}, {"version", kVersion}, {"config", cfg}, {"result", out.result}};
  return doc.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg lattice geometry, covering and ergodic experiments"};
  app.require_subcommand(1);
  Opts o;

  struct Sub {
    CLI::App* app;
    std::vector<std::string> used;
  };
  std::vector<Sub> subs;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* masses_opt = nullptr;

  auto sub = [&](const std::string& name, const std::string& help, std::vector<std::string> flags) {
    CLI::App* s = app.add_subcommand(name, help);
    for (const auto& f : flags) {
      if (f == "n") s->add_option("--n", o.n, "dimension")->check(CLI::PositiveNumber);
      else if (f == "k") s->add_option("--k", o.k, "ball radius");
      else if (f == "k_max") s->add_option("--k-max", o.k_max, "largest radius or chain length");
      else if (f == "sigma") {
        auto* op = s->add_option("--sigma", o.sigma, "generator word, e.g. e1,ie2^-1");
        if (name == "ergodic") sigma_opt = op;
      } else if (f == "t") s->add_option("--t", o.t, "thickening");
      else if (f == "rho") s->add_option("--rho", o.rho, "net radius");
      else if (f == "eps") {
        auto* op = s->add_option("--eps", o.eps, "epsilon (exact decimal or p/q)");
        if (name == "boundgen") eps_opt = op;
      } else if (f == "delta") {
        auto* op = s->add_option("--delta", o.delta, "delta (exact decimal or p/q)");
        if (name == "boundgen") delta_opt = op;
      } else if (f == "chi") s->add_option("--chi", o.chi, "well-separability constant");
      else if (f == "kappa") s->add_option("--kappa", o.kappa, "intersection dimension");
      else if (f == "R") s->add_option("--R", o.R, "scale constant R");
      else if (f == "C") s->add_option("--C", o.C, "branch constant C");
      else if (f == "seed") s->add_option("--seed", o.seed, "random seed");
      else if (f == "trials") s->add_option("--trials", o.trials, "number of trials");
      else if (f == "balls") s->add_option("--balls", o.balls, "balls per random carpet");
      else if (f == "modulus") s->add_option("--modulus", o.modulus, "quotient modulus");
      else if (f == "masses") {
        auto* op = s->add_option("--masses", o.masses, name == "maximal" ? "uniform or linear (default linear)" : "uniform or linear");
        if (name == "maximal") masses_opt = op;
      }
      else if (f == "action") s->add_option("--action", o.action, "action spec JSON file");
      else if (f == "point") s->add_option("--point", o.point, "point of X for the indicator");
      else if (f == "list") s->add_flag("--list", o.list, "list the points");
      else if (f == "workers") s->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    }
    if (std::find(flags.begin(), flags.end(), "seed") == flags.end()) {
      s->add_option("--seed", o.seed, "random seed (recorded)");
      flags.push_back("seed");
    }
    s->add_option("--out", o.out, "write to this file instead of stdout");
    s->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--cap", o.cap, "resource cap")->check(CLI::PositiveNumber);
    flags.push_back("cap");
    subs.push_back({s, flags});
  };

  sub("ball", "count or list the integer ball B_k", {"n", "k", "list"});
  sub("doubling", "|B_k B_k| / |B_k| for k <= k-max", {"n", "k_max"});
  sub("folner", "|B_k symdiff sigma B_k| / |B_k|", {"n", "k", "k_max", "sigma"});
  sub("boundary", "lattice points of the t-boundary of B_k", {"n", "k", "t"});
  sub("net", "greedy net of the unit ball by rho/2-balls", {"n", "rho"});
  sub("bcp", "Besicovitch selection on random carpets", {"n", "k", "seed", "trials", "balls"});
  sub("colour", "colour a Besicovitch selection into separated classes", {"n", "k", "seed", "balls", "chi"});
  sub("boundgen", "boundary selection on a synthetic instance", {"seed", "eps", "delta"});
  sub("height", "required stack height q", {"chi", "eps", "delta", "kappa", "R"});
  sub("lss", "large-scale separation sweep", {"n", "R", "eps", "seed", "trials"});
  sub("closeball", "inner-ball construction with measured R", {"n", "R", "C", "seed", "trials"});
  sub("intersect", "search for chains of incident thickened spheres", {"n", "R", "k_max", "seed", "trials", "workers"});
  sub("ergodic", "cocycle-weighted averages of an indicator", {"n", "k", "k_max", "modulus", "masses", "action", "point", "sigma"});
  sub("maximal", "maximal lemma and inequality with measured constants",
      {"n", "k_max", "eps", "modulus", "masses", "action", "seed", "trials"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 64;
  }

  const Sub* active = nullptr;
  for (const auto& s : subs)
    if (s.app->parsed()) active = &s;
  const std::string cmd = active->app->get_name();

  try {
    Output out;
    if (cmd == "ball") out = cmd_ball(o);
    else if (cmd == "doubling") out = cmd_doubling(o);
    else if (cmd == "folner") out = cmd_folner(o);
    else if (cmd == "boundary") out = cmd_boundary(o);
    else if (cmd == "net") out = cmd_net(o);
    else if (cmd == "bcp") out = cmd_bcp(o);
    else if (cmd == "colour") out = cmd_colour(o);
    else if (cmd == "boundgen") out = cmd_boundgen(o, eps_opt->count() > 0, delta_opt->count() > 0);
    else if (cmd == "height") out = cmd_height(o);
    else if (cmd == "lss") out = cmd_lss(o);
    else if (cmd == "closeball") out = cmd_closeball(o);
    else if (cmd == "intersect") out = cmd_intersect(o);
    else if (cmd == "ergodic") out = cmd_ergodic(o, sigma_opt->count() > 0);
    else if (cmd == "maximal") {
      if (masses_opt->count() == 0) o.masses = "linear";
      out = cmd_maximal(o);
    }

    const std::string doc = render(cmd, o, config_json(cmd, o, active->used), out);
    if (o.out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write " + o.out);
      f << doc;
    }
    return 0;
  } catch (const HypothesisError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const ResourceCapError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
