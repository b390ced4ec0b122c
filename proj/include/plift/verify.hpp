#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plift/config.hpp"
#include "plift/ideals.hpp"
#include "plift/lifting.hpp"

namespace plift {

struct SampleSpec {
  enum class Kind { Quadset, Grid, Forest, Collinear };
  Kind kind = Kind::Quadset;
  int rows = 3;  // grid
  int cols = 4;  // grid
  Config forest;
  int n = 6;  // collinear
  std::uint64_t seed = 0;
  std::int64_t coeffRange = 30;
};

// Exact sample, resampled on degeneracy. Throws RetryBudgetExhausted.
Realisation sample(const SampleSpec& spec);

struct MembershipReport {
  bool inCircuitVariety = false;
  bool inV0 = false;
  bool realisesM = false;
  std::optional<Triple> violatedCircuit;
  std::optional<Triple> violatedIndependence;
};

// Throws SizeMismatch.
MembershipReport membership(const Realisation& r, const Rank3Matroid& m);

// Counts for one assertion; `required` is the minimal pass fraction.
struct Tally {
  std::string name;
  std::string direction;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double required = 1.0;

  bool ok() const;
};

struct Witness {
  std::string name;
  std::string detail;
};

struct ProbeReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::size_t passed = 0;  // trials whose strict assertions all held
  std::size_t failed = 0;
  std::vector<Tally> tallies;
  std::vector<Witness> witnesses;

  bool ok() const;
  Tally& tally(const std::string& name, const std::string& direction, double required = 1.0);
};

std::string to_json(const ProbeReport& r);

// Frame tuples tested on grids: the 28 weakly increasing ones followed by
// 100 fixed random ones.
std::vector<std::array<int, 6>> g34_test_tuples();

ProbeReport probe_tfae_qs(int trials, std::uint64_t seed);

// `checkMinors` enumerates all 10-minors of the collinearity matrix.
ProbeReport probe_tfae_grid(int trials, std::uint64_t seed, bool checkMinors = true);

enum class Matroid { QS, G34 };

ProbeReport probe_decomposition(Matroid m, int trials, std::uint64_t seed);

// Projects r from a random generic center onto a random line, retrying on
// collisions. Returns nullopt when the budget is exhausted.
std::optional<Projection> random_projection(const Realisation& r, std::uint64_t seed);

}  // namespace plift
