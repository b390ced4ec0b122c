#include "plift/verify.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "json.hpp"
#include "plift/error.hpp"
#include "plift/random.hpp"

namespace plift {

namespace {

constexpr int kRetryBudget = 64;
constexpr std::size_t kMaxWitnesses = 8;

QVector random_vector(Rng& rng, std::int64_t range) {
  for (;;) {
    QVector v{rng.uniform_rat(-range, range), rng.uniform_rat(-range, range),
              rng.uniform_rat(-range, range)};
    if (!is_zero_vector(v)) return v;
  }
}

Realisation columns_to_matrix(const std::vector<QVector>& cols) {
  return QMatrix::from_columns(cols, 3);
}

Realisation sample_quadset(Rng& rng, std::int64_t range) {
  const Config target = normalized(quadset_config());
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    std::array<QVector, 4> L;
    for (auto& l : L) l = random_vector(rng, range);
    // 1=ab, 2=ac, 3=ad, 4=cd, 5=bd, 6=bc
    const std::vector<QVector> pts{cross(L[0], L[1]), cross(L[0], L[2]), cross(L[0], L[3]),
                                   cross(L[2], L[3]), cross(L[1], L[3]), cross(L[1], L[2])};
    if (std::any_of(pts.begin(), pts.end(), [](const QVector& p) { return is_zero_vector(p); }))
      continue;
    Realisation r = columns_to_matrix(pts);
    try {
      if (config_of_realisation(r) == target) return r;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no quadrilateral set in general position");
}

Realisation sample_grid(Rng& rng, int rows, int cols, std::int64_t range) {
  const Config target = normalized(grid_config(rows, cols));
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const QVector rowApex = random_vector(rng, range);
    const QVector colApex = random_vector(rng, range);
    std::vector<QVector> rowLines, colLines;
    for (int r = 0; r < rows; ++r) rowLines.push_back(cross(rowApex, random_vector(rng, range)));
    for (int k = 0; k < cols; ++k) colLines.push_back(cross(colApex, random_vector(rng, range)));
    std::vector<QVector> pts;
    bool ok = true;
    for (int k = 0; k < cols && ok; ++k)
      for (int r = 0; r < rows && ok; ++r) {
        pts.push_back(cross(rowLines[r], colLines[k]));
        ok = !is_zero_vector(pts.back());
      }
    if (!ok) continue;
    Realisation m = columns_to_matrix(pts);
    try {
      if (config_of_realisation(m) == target) return m;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "no generic grid");
}

Realisation sample_forest(Rng& rng, const Config& c, std::int64_t range) {
  const std::int64_t bound = std::max<std::int64_t>(range, 4 * c.n);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const QVector x = random_abscissas(static_cast<std::size_t>(c.n), rng.next(), bound);
    try {
      return forest_lift(c, x).realisation;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateParameterCollision) throw;
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted, "forest lift kept colliding");
}

Realisation sample_collinear(Rng& rng, int n, std::int64_t range) {
  for (;;) {
    const QVector p = random_vector(rng, range);
    const QVector q = random_vector(rng, range);
    if (is_zero_vector(cross(p, q))) continue;
    const QVector t = random_abscissas(static_cast<std::size_t>(n), rng.next(),
                                       std::max<std::int64_t>(range, n));
    std::vector<QVector> pts;
    for (const Rat& ti : t) pts.push_back({p[0] + ti * q[0], p[1] + ti * q[1], p[2] + ti * q[2]});
    return columns_to_matrix(pts);
  }
}

// Column-wise rescaling to primitive integer vectors; every tested polynomial
// is homogeneous in each point, so vanishing is unaffected.
Realisation integral_columns(const Realisation& r) {
  Realisation out(r.rows(), r.cols());
  for (std::size_t c = 0; c < r.cols(); ++c) {
    Int l = 1;
    for (std::size_t i = 0; i < r.rows(); ++i) l = lcm(l, r(i, c).get_den());
    Int g = 0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      const Int v = r(i, c).get_num() * (l / r(i, c).get_den());
      g = gcd(g, v);
    }
    if (g == 0) g = 1;
    for (std::size_t i = 0; i < r.rows(); ++i)
      out(i, c) = Rat(Int(r(i, c).get_num() * (l / r(i, c).get_den()) / g));
  }
  return out;
}

struct Labelled {
  Poly poly;
  std::string label;
};

std::string frames_label(const std::vector<int>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ",R" : "R") + std::to_string(f[i]);
  return s;
}

std::string line_label(const std::vector<int>& line) {
  std::string s = "l";
  for (int p : line) s += std::to_string(p);
  return s;
}

const std::vector<Labelled>& qs_all() {
  static const std::vector<Labelled> polys = [] {
    std::vector<Labelled> out;
    for (const auto& line : quadset_config().lines)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          for (int k = 1; k <= 3; ++k)
            out.push_back({qs_poly(line, FramePoint::R(i), FramePoint::R(j), FramePoint::R(k)),
                           "QS(" + line_label(line) + ";" + frames_label({i, j, k}) + ")"});
    return out;
  }();
  return polys;
}

const std::vector<Labelled>& g34_all() {
  static const std::vector<Labelled> polys = [] {
    std::vector<Labelled> out;
    const auto tuples = g34_test_tuples();
    for (int column = 1; column <= 4; ++column)
      for (const auto& t : tuples) {
        std::array<FramePoint, 6> frames{FramePoint::R(t[0]), FramePoint::R(t[1]),
                                         FramePoint::R(t[2]), FramePoint::R(t[3]),
                                         FramePoint::R(t[4]), FramePoint::R(t[5])};
        out.push_back({g34_poly(column, frames),
                       "G34(c" + std::to_string(column) + ";" +
                           frames_label(std::vector<int>(t.begin(), t.end())) + ")"});
      }
    return out;
  }();
  return polys;
}

std::vector<Labelled> labelled(const GeneratorSet& g) {
  std::vector<Labelled> out;
  for (const auto& e : g.entries) out.push_back({e.poly, e.label});
  return out;
}

const std::vector<Labelled>& generators_of(Matroid m) {
  static const std::vector<Labelled> qs = labelled(qs_generators());
  static const std::vector<Labelled> g34 = labelled(g34_generators());
  return m == Matroid::QS ? qs : g34;
}

// Index of the first polynomial not vanishing at r, or nullopt.
std::optional<std::size_t> first_nonzero(const std::vector<Labelled>& polys, const Realisation& r) {
  const Assignment at = Assignment::from_columns(integral_columns(r));
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (sgn(polys[i].poly.evaluate(at)) != 0) return i;
  return std::nullopt;
}

Realisation chart_points(const Projection& p) {
  std::vector<QVector> pts;
  for (const Rat& t : p.abscissas) pts.push_back(p.chart_point(t));
  return columns_to_matrix(pts);
}

// Lift realising c whose projection from (0,0,1) to z = 0 returns x.
bool realising_round_trip(const Config& c, const QVector& x, std::uint64_t seed) {
  const auto l = lift(c, x, 32, seed);
  if (!l || l->kind != LiftKind::Realising) return false;
  try {
    return project(l->realisation, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(1)}).abscissas == x;
  } catch (const Error&) {
    return false;
  }
}

class TrialRecorder {
 public:
  TrialRecorder(ProbeReport& report, int trial) : report_(report), trial_(trial) {}

  void check(const std::string& name, const std::string& direction, bool ok, double required = 1.0,
             const std::function<std::string()>& detail = {}) {
    Tally& t = report_.tally(name, direction, required);
    (ok ? t.passed : t.failed)++;
    if (!ok && required >= 1.0) strictFailed_ = true;
    if (!ok && report_.witnesses.size() < kMaxWitnesses)
      report_.witnesses.push_back(
          {name, "trial " + std::to_string(trial_) + (detail ? ": " + detail() : "")});
  }

  void note(const std::string& name, const std::string& detail) {
    if (report_.witnesses.size() < kMaxWitnesses)
      report_.witnesses.push_back({name, "trial " + std::to_string(trial_) + ": " + detail});
  }

  ~TrialRecorder() { (strictFailed_ ? report_.failed : report_.passed)++; }

 private:
  ProbeReport& report_;
  int trial_;
  bool strictFailed_ = false;
};

std::string describe(const std::vector<Labelled>& polys, std::size_t i, const Realisation& r) {
  const Assignment at = Assignment::from_columns(integral_columns(r));
  return polys[i].label + " = " + to_string(polys[i].poly.evaluate(at));
}

ProbeReport start(const std::string& suite, int trials, std::uint64_t seed) {
  ProbeReport r;
  r.suite = suite;
  r.trials = trials;
  r.seed = seed;
  return r;
}

}  // namespace

Realisation sample(const SampleSpec& spec) {
  Rng rng(spec.seed);
  const std::int64_t range = std::max<std::int64_t>(spec.coeffRange, 2);
  switch (spec.kind) {
    case SampleSpec::Kind::Quadset:
      return sample_quadset(rng, range);
    case SampleSpec::Kind::Grid:
      if (spec.rows < 1 || spec.cols < 1)
        throw Error(ErrorKind::SizeMismatch, "grid needs positive dimensions");
      return sample_grid(rng, spec.rows, spec.cols, range);
    case SampleSpec::Kind::Forest:
      return sample_forest(rng, spec.forest, range);
    case SampleSpec::Kind::Collinear:
      if (spec.n < 1) throw Error(ErrorKind::SizeMismatch, "collinear sample needs n >= 1");
      return sample_collinear(rng, spec.n, range);
  }
  throw Error(ErrorKind::SizeMismatch, "unknown sample kind");
}

MembershipReport membership(const Realisation& r, const Rank3Matroid& m) {
  if (r.rows() != 3 || r.cols() != static_cast<std::size_t>(m.n))
    throw Error(ErrorKind::SizeMismatch, "realisation has " + std::to_string(r.cols()) +
                                             " points, matroid has " + std::to_string(m.n));
  MembershipReport out;
  out.inV0 = true;
  std::vector<QVector> cols;
  for (std::size_t c = 0; c < r.cols(); ++c) cols.push_back(r.column(c));
  for (int i = 1; i <= m.n; ++i)
    for (int j = i + 1; j <= m.n; ++j)
      for (int k = j + 1; k <= m.n; ++k) {
        const bool zero = sgn(det3(cols[i - 1], cols[j - 1], cols[k - 1])) == 0;
        if (!zero) out.inV0 = false;
        if (m.dependent(i, j, k)) {
          if (!zero && !out.violatedCircuit) out.violatedCircuit = Triple{i, j, k};
        } else if (zero && !out.violatedIndependence) {
          out.violatedIndependence = Triple{i, j, k};
        }
      }
  out.inCircuitVariety = !out.violatedCircuit;
  out.realisesM = out.inCircuitVariety && !out.violatedIndependence;
  return out;
}

bool Tally::ok() const {
  const std::size_t total = passed + failed;
  if (required >= 1.0) return failed == 0;
  return total == 0 || static_cast<double>(passed) >= required * static_cast<double>(total);
}

bool ProbeReport::ok() const {
  return failed == 0 && std::all_of(tallies.begin(), tallies.end(), [](const Tally& t) { return t.ok(); });
}

Tally& ProbeReport::tally(const std::string& name, const std::string& direction, double required) {
  for (auto& t : tallies)
    if (t.name == name) return t;
  tallies.push_back(Tally{name, direction, 0, 0, required});
  return tallies.back();
}

std::string to_json(const ProbeReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["ok"] = r.ok();
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tallies)
    j["assertions"].push_back({{"name", t.name},
                               {"direction", t.direction},
                               {"passed", t.passed},
                               {"failed", t.failed},
                               {"requiredPercent", static_cast<int>(t.required * 100 + 0.5)},
                               {"ok", t.ok()}});
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back({{"name", w.name}, {"detail", w.detail}});
  return j.dump(2);
}

std::vector<std::array<int, 6>> g34_test_tuples() {
  std::vector<std::array<int, 6>> out;
  for (const auto& t : weakly_increasing(6)) {
    std::array<int, 6> a{};
    std::copy(t.begin(), t.end(), a.begin());
    out.push_back(a);
  }
  Rng rng(0x6334);
  for (int i = 0; i < 100; ++i) {
    std::array<int, 6> a{};
    for (int& f : a) f = static_cast<int>(rng.uniform(1, 3));
    out.push_back(a);
  }
  return out;
}

std::optional<Projection> random_projection(const Realisation& r, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    const QVector center = random_vector(rng, 50);
    const QVector line = random_vector(rng, 50);
    try {
      Projection p = project(r, center, line);
      if (p.distinct) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

ProbeReport probe_tfae_qs(int trials, std::uint64_t seed) {
  ProbeReport report = start("tfae-qs", trials, seed);
  const Config qs = quadset_config();
  const auto& polys = qs_all();
  for (int t = 0; t < trials; ++t) {
    TrialRecorder rec(report, t);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));

    SampleSpec spec;
    spec.seed = rng.next();
    const Realisation r = sample(spec);
    const auto atQs = first_nonzero(polys, r);
    rec.check("qs-vanish-on-realisation", "CQS: realisation => QS = 0", !atQs,
              1.0, [&] { return describe(polys, *atQs, r); });

    const auto proj = random_projection(r, rng.next());
    rec.check("projection-sampled", "sampling", proj.has_value());
    if (proj) {
      const QVector& x = proj->abscissas;
      const CollinMatrix cm = build_collin(qs, x);
      const std::size_t rk = rank(*cm.numeric);
      rec.check("rank-at-most-3", "TFAE (i) => rank <= 3", rk <= 3, 1.0,
                [&] { return "rank " + std::to_string(rk); });
      const Realisation q = chart_points(*proj);
      const auto atProj = first_nonzero(polys, q);
      rec.check("qs-vanish-on-projection", "TFAE (i) => (ii)", !atProj, 1.0,
                [&] { return describe(polys, *atProj, q); });
      rec.check("realising-lift", "TFAE (ii) => (i)", realising_round_trip(qs, x, rng.next()));
    }

    SampleSpec neg;
    neg.kind = SampleSpec::Kind::Collinear;
    neg.n = 6;
    neg.seed = rng.next();
    const Realisation c = sample(neg);
    const auto nproj = random_projection(c, rng.next());
    if (nproj) {
      const std::size_t rk = rank(*build_collin(qs, nproj->abscissas).numeric);
      rec.check("control-rank-4", "control: generic rank", rk == 4, 0.99,
                [&] { return "rank " + std::to_string(rk); });
    }
    const auto w = first_nonzero(polys, c);
    rec.check("control-nonzero-witness", "control: (ii) fails generically", w.has_value(), 0.99);
    if (w && t == 0) rec.note("control-witness-example", describe(polys, *w, c));
  }
  return report;
}

ProbeReport probe_tfae_grid(int trials, std::uint64_t seed, bool checkMinors) {
  ProbeReport report = start("tfae-grid", trials, seed);
  const Config grid = grid3x4_config();
  const auto& polys = g34_all();
  for (int t = 0; t < trials; ++t) {
    TrialRecorder rec(report, t);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));

    SampleSpec spec;
    spec.kind = SampleSpec::Kind::Grid;
    spec.seed = rng.next();
    const Realisation r = sample(spec);
    const auto atGrid = first_nonzero(polys, r);
    rec.check("g34-vanish-on-realisation", "CG34: realisation => G34 = 0", !atGrid, 1.0,
              [&] { return describe(polys, *atGrid, r); });

    const auto proj = random_projection(r, rng.next());
    rec.check("projection-sampled", "sampling", proj.has_value());
    if (proj) {
      const QVector& x = proj->abscissas;
      const CollinMatrix cm = build_collin(grid, x);
      const std::size_t rk = rank(*cm.numeric);
      rec.check("rank-at-most-9", "TFAE (i) => rank <= 9", rk <= 9, 1.0,
                [&] { return "rank " + std::to_string(rk); });
      const Realisation q = chart_points(*proj);
      const auto atProj = first_nonzero(polys, q);
      rec.check("g34-vanish-on-projection", "TFAE (i) => (ii)", !atProj, 1.0,
                [&] { return describe(polys, *atProj, q); });
      if (checkMinors) {
        std::size_t count = 0, nonzero = 0;
        for_each_minor(*cm.numeric, 10, [&](const MinorEntry& e) {
          ++count;
          if (sgn(e.value) != 0) ++nonzero;
        });
        rec.check("ten-minors-vanish", "Claim: rank <= 9", count == 8008 * 66 && nonzero == 0, 1.0,
                  [&] {
                    return std::to_string(count) + " minors, " + std::to_string(nonzero) +
                           " nonzero";
                  });
      }
      rec.check("realising-lift", "TFAE (ii) => (i)", realising_round_trip(grid, x, rng.next()));
    }

    SampleSpec neg;
    neg.kind = SampleSpec::Kind::Collinear;
    neg.n = 12;
    neg.seed = rng.next();
    const Realisation c = sample(neg);
    const auto nproj = random_projection(c, rng.next());
    if (nproj) {
      const std::size_t rk = rank(*build_collin(grid, nproj->abscissas).numeric);
      rec.check("control-rank-10", "control: generic rank", rk == 10, 0.99,
                [&] { return "rank " + std::to_string(rk); });
    }
    const auto w = first_nonzero(polys, c);
    rec.check("control-nonzero-witness", "control: (ii) fails generically", w.has_value(), 0.99);
    if (w && t == 0) rec.note("control-witness-example", describe(polys, *w, c));
  }
  return report;
}

ProbeReport probe_decomposition(Matroid m, int trials, std::uint64_t seed) {
  ProbeReport report =
      start(m == Matroid::QS ? "decomposition-qs" : "decomposition-grid", trials, seed);
  const Config config = m == Matroid::QS ? quadset_config() : grid3x4_config();
  const Rank3Matroid matroid = circuits(config);
  const auto& gens = generators_of(m);
  const std::string oneWay = "V_C(M) subset V0 u V(I) (one-way)";

  for (int t = 0; t < trials; ++t) {
    TrialRecorder rec(report, t);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));

    auto circuit_sample = [&](const std::string& source, const Realisation& r) {
      const MembershipReport mr = membership(r, matroid);
      rec.check("membership-implications", "realisesM or inV0 => inCircuitVariety",
                (!mr.realisesM || mr.inCircuitVariety) && (!mr.inV0 || mr.inCircuitVariety));
      rec.check(source + "-in-circuit-variety", "sampling", mr.inCircuitVariety);
      if (!mr.inCircuitVariety) return mr;
      const auto w = first_nonzero(gens, r);
      rec.check("v0-or-generators-vanish", oneWay, mr.inV0 || !w, 1.0,
                [&] { return source + " " + describe(gens, *w, r); });
      return mr;
    };

    SampleSpec spec;
    spec.kind = m == Matroid::QS ? SampleSpec::Kind::Quadset : SampleSpec::Kind::Grid;
    spec.seed = rng.next();
    const Realisation genuine = sample(spec);
    const MembershipReport gm = circuit_sample("genuine", genuine);
    rec.check("genuine-realises", "construction", gm.realisesM);
    const auto gw = first_nonzero(gens, genuine);
    rec.check("genuine-generators-vanish", "Generators: I subset I_M", !gw, 1.0,
              [&] { return describe(gens, *gw, genuine); });

    const auto proj = random_projection(genuine, rng.next());
    rec.check("projection-sampled", "sampling", proj.has_value());
    if (proj) {
      const Realisation collinear = chart_points(*proj);
      const MembershipReport cm = circuit_sample("projected", collinear);
      rec.check("projected-in-v0", "V0 is the line variety", cm.inV0);
      const auto l = lift(config, proj->abscissas, 32, rng.next());
      const bool realising = l && l->kind == LiftKind::Realising;
      if (!first_nonzero(gens, collinear))
        rec.check("vanishing-collinear-lifts", "TFAE (ii) => (i)", realising);
      if (l) {
        Rat eps(1, static_cast<long>(rng.uniform(2, 1000)));
        try {
          const LiftResult scaled = epsilon_scale(*l, eps);
          circuit_sample("scaled-lift", scaled.realisation);
        } catch (const Error&) {
          rec.check("scaled-lift-nonzero", "sampling", false);
        }
      }
    }

    SampleSpec plain;
    plain.kind = SampleSpec::Kind::Collinear;
    plain.n = config.n;
    plain.seed = rng.next();
    const MembershipReport pm = circuit_sample("collinear", sample(plain));
    rec.check("collinear-in-v0", "V0 is the line variety", pm.inV0);

    Realisation random(3, static_cast<std::size_t>(config.n));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < random.cols(); ++j) random(i, j) = rng.uniform_rat(-30, 30);
    const MembershipReport rm = membership(random, matroid);
    rec.check("membership-implications", "realisesM or inV0 => inCircuitVariety",
              (!rm.realisesM || rm.inCircuitVariety) && (!rm.inV0 || rm.inCircuitVariety));
    const auto rw = first_nonzero(gens, random);
    rec.check("non-member-witness", "control: generator nonzero off V_M", rw.has_value(), 0.99);
    if (rw && t == 0) rec.note("non-member-witness-example", describe(gens, *rw, random));
  }
  return report;
}

}  // namespace plift
