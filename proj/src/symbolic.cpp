#include "padicdyn/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace padicdyn {

Word::Word(int alphabet_size_, std::vector<int> symbols_)
    : alphabet_size(alphabet_size_), symbols(std::move(symbols_)) {
  if (alphabet_size != 2 && alphabet_size != 4) {
    throw InvalidInput("word alphabet size must be 2 or 4");
  }
  for (int s : symbols) {
    if (s < 1 || s > alphabet_size) {
      throw InvalidInput("word symbol out of range: " + std::to_string(s));
    }
  }
}

Word shift(const Word& w) {
  if (w.symbols.empty()) return w;
  return Word(w.alphabet_size,
              std::vector<int>(w.symbols.begin() + 1, w.symbols.end()));
}

TransitionMatrix::TransitionMatrix(std::vector<std::vector<int>> rows_)
    : size(static_cast<int>(rows_.size())), rows(std::move(rows_)) {
  if (size == 0) throw InvalidInput("transition matrix must be nonempty");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != size) {
      throw InvalidInput("transition matrix must be square");
    }
    bool any = false;
    for (int e : row) {
      if (e != 0 && e != 1) throw InvalidInput("transition entries must be 0/1");
      any = any || e == 1;
    }
    if (!any) throw InvalidInput("transition matrix has an all-zero row");
  }
}

namespace {

void require_regime(const MapParams& params, Regime expected, const char* op) {
  Regime got = classify(params);
  if (got != expected) {
    throw WrongRegime(std::string(op) + ": requires regime " +
                      regime_name(expected) + ", parameters classify as " +
                      regime_name(got));
  }
}

}  // namespace

std::pair<PDisk, PDisk> shift_disks(const MapParams& params) {
  require_regime(params, Regime::FullShiftTwo, "shift_disks");
  std::int64_t v = *vp(params.a, params.p);  // negative even
  std::int64_t m = v / 2 - 1;
  PadicScalar root = PadicScalar::from_rational(Rational(1) - params.a,
                                                params.p, params.precision)
                         .sqrt();
  PadicScalar x1 = inv(root);
  return {PDisk(ProjPoint::finite(x1), m, DiskKind::Standard),
          PDisk(ProjPoint::finite(neg(x1)), m, DiskKind::Standard)};
}

PDisk fullshift_target_disk(const MapParams& params) {
  require_regime(params, Regime::FullShiftTwo, "fullshift_target_disk");
  std::int64_t v = *vp(params.a, params.p);
  return PDisk(ProjPoint::finite(PadicScalar::zero(params.p, params.precision)),
               -v / 2 - 1, DiskKind::Standard);
}

ItineraryResult itinerary2(const MapParams& params, const ProjPoint& x, int n) {
  if (n < 1) throw InvalidInput("itinerary2: length must be >= 1");
  auto [d1, d2] = shift_disks(params);
  ItineraryResult out{Word(2, {}), std::nullopt};
  ProjPoint current = x;
  for (int t = 0; t < n; ++t) {
    if (contains(d1, current)) {
      out.word.symbols.push_back(1);
    } else if (contains(d2, current)) {
      out.word.symbols.push_back(2);
    } else {
      out.escape_step = t;
      return out;
    }
    if (t + 1 < n) current = apply(params, current);
  }
  return out;
}

ProjPoint inverse_branch(const MapParams& params, const ProjPoint& y,
                         int branch) {
  if (branch != 1 && branch != 2) {
    throw InvalidInput("inverse_branch: branch must be 1 or 2");
  }
  auto disks = shift_disks(params);
  if (!contains(fullshift_target_disk(params), y)) {
    throw InvalidInput("inverse_branch: y outside the target disk");
  }
  const PDisk& target = (branch == 1) ? disks.first : disks.second;
  // Solve ax^2 - yx + 1 = 0; the two roots are the preimages of y, one in
  // each branch disk.
  int prec = y.is_infinity() ? params.precision
                             : std::max(params.precision, y.value().precision());
  PadicScalar a_sc = params.a_scalar(prec);
  const PadicScalar& yv = y.value();
  PadicScalar disc = sub(mul(yv, yv),
                         PadicScalar::from_rational(4 * params.a, params.p, prec));
  if (!disc.is_square()) {
    throw InternalError(
        "inverse_branch: discriminant not a square (cannot occur for valid "
        "inputs)");
  }
  PadicScalar root = disc.sqrt();
  PadicScalar two_a = mul(PadicScalar::from_rational(Rational(2), params.p, prec),
                          a_sc);
  PadicScalar r_plus = div(add(yv, root), two_a);
  PadicScalar r_minus = div(sub(yv, root), two_a);
  bool plus_in = contains(target, ProjPoint::finite(r_plus));
  bool minus_in = contains(target, ProjPoint::finite(r_minus));
  if (plus_in == minus_in) {
    throw InternalError("inverse_branch: root selection ambiguous");
  }
  return ProjPoint::finite(plus_in ? r_plus : r_minus);
}

CylinderDisk cylinder(const MapParams& params, const Word& w) {
  if (w.alphabet_size != 2) throw InvalidInput("cylinder: word must be binary");
  int n = static_cast<int>(w.symbols.size());
  if (n < 1) throw InvalidInput("cylinder: word must be nonempty");
  require_regime(params, Regime::FullShiftTwo, "cylinder");
  std::int64_t v = *vp(params.a, params.p);
  // Each inverse branch contracts by |a|_p^{-1} = p^v; depth-n cylinders need
  // about n*|v| certified digits.
  int needed = static_cast<int>((n + 2) * (-v)) + 16;
  MapParams deep(params.p, params.a, std::max(params.precision, needed));
  auto disks = shift_disks(deep);
  try {
    ProjPoint z = (w.symbols.back() == 1) ? disks.first.center
                                          : disks.second.center;
    for (int k = n - 2; k >= 0; --k) {
      z = inverse_branch(deep, z, w.symbols[static_cast<std::size_t>(k)]);
    }
    std::int64_t radius = v / 2 - 1 + (n - 1) * v;
    return {w, PDisk(z, radius, DiskKind::Standard)};
  } catch (const PrecisionExhausted& e) {
    throw PrecisionExhausted(std::string(e.what()) + " (cylinder of depth " +
                             std::to_string(n) + " needs about " +
                             std::to_string(n * (-v)) + " digits)");
  }
}

ProjPoint point_realizing(const MapParams& params, const Word& w) {
  return cylinder(params, w).disk.center;
}

ProjPoint period2_point(const MapParams& params, int branch) {
  if (branch != 1 && branch != 2) {
    throw InvalidInput("period2_point: branch must be 1 or 2");
  }
  // phi^2(x) = x and phi(x) != x reduce to (1+a) x^2 = -1.
  Rational radicand = -(Rational(1) + params.a);
  if (radicand == 0 || !is_square_rational(radicand, params.p)) {
    throw InvalidInput("period2_point: no period-2 point in Q_p (x^2 = -1/(1+a) unsolvable)");
  }
  PadicScalar root =
      PadicScalar::from_rational(radicand, params.p, params.precision).sqrt();
  PadicScalar x = inv(root);
  if (classify(params) == Regime::FullShiftTwo) {
    auto disks = shift_disks(params);
    const PDisk& want = branch == 1 ? disks.first : disks.second;
    if (contains(want, ProjPoint::finite(x))) return ProjPoint::finite(x);
    PadicScalar other = neg(x);
    if (!contains(want, ProjPoint::finite(other))) {
      throw InternalError("period2_point: neither root lies in the branch disk");
    }
    return ProjPoint::finite(other);
  }
  return ProjPoint::finite(branch == 1 ? x : neg(x));
}

std::array<PDisk, 4> sft_regions(const MapParams& params) {
  require_regime(params, Regime::ChaoticSFT, "sft_regions");
  std::int64_t v = *vp(params.a, params.p);  // positive even
  PadicScalar root =
      PadicScalar::from_rational(-params.a, params.p, params.precision).sqrt();
  PadicScalar c1 = inv(root);
  PadicScalar zero = PadicScalar::zero(params.p, params.precision);
  return {PDisk(ProjPoint::finite(c1), -1, DiskKind::Standard),
          PDisk(ProjPoint::finite(neg(c1)), -1, DiskKind::Standard),
          PDisk(ProjPoint::finite(zero), -v - 1, DiskKind::Standard),
          // complement of the open disk {|x| < p^{-v+1}}, i.e. {|x| > |a|_p}
          PDisk(ProjPoint::finite(zero), -v + 1, DiskKind::Complement)};
}

ItineraryResult itinerary4(const MapParams& params, const ProjPoint& x, int n) {
  if (n < 1) throw InvalidInput("itinerary4: length must be >= 1");
  auto regions = sft_regions(params);
  ItineraryResult out{Word(4, {}), std::nullopt};
  ProjPoint current = x;
  for (int t = 0; t < n; ++t) {
    int symbol = 0;
    for (int i = 0; i < 4; ++i) {
      if (contains(regions[static_cast<std::size_t>(i)], current)) {
        symbol = i + 1;
        break;
      }
    }
    if (symbol == 0) {
      out.escape_step = t;
      return out;
    }
    out.word.symbols.push_back(symbol);
    if (t + 1 < n) current = apply(params, current);
  }
  return out;
}

TransitionMatrix transition_matrix4() {
  return TransitionMatrix({{0, 0, 1, 0},
                           {0, 0, 1, 0},
                           {0, 0, 0, 1},
                           {1, 1, 0, 1}});
}

bool is_admissible(const Word& w, const TransitionMatrix& A) {
  for (int s : w.symbols) {
    if (s < 1 || s > A.size) {
      throw InvalidInput("is_admissible: symbol exceeds matrix size");
    }
  }
  for (std::size_t t = 1; t < w.symbols.size(); ++t) {
    if (A.rows[static_cast<std::size_t>(w.symbols[t - 1] - 1)]
              [static_cast<std::size_t>(w.symbols[t] - 1)] != 1) {
      return false;
    }
  }
  return true;
}

EntropyReport entropy(const TransitionMatrix& A, double rel_tol,
                      int max_iterations, int count_lengths) {
  const int n = A.size;
  // Iterate on A + I: the shift keeps the iteration aperiodic (the raw
  // matrix may have a periodic graph) and moves every eigenvalue by +1, so
  // the Perron root of A is the limit norm minus one.
  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  double shifted = 0.0;
  int iterations = 0;
  bool converged = false;
  while (iterations < max_iterations) {
    ++iterations;
    std::vector<double> w = v;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (A.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          w[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(j)];
        }
      }
    }
    double norm = *std::max_element(w.begin(), w.end());
    if (norm == 0.0) throw InternalError("entropy: zero iterate");
    for (double& e : w) e /= norm;
    double delta = std::abs(norm - shifted);
    shifted = norm;
    v = std::move(w);
    if (iterations > 3 && delta <= rel_tol * std::abs(shifted)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NonConvergence("entropy: power iteration hit its cap");
  double lambda = shifted - 1.0;

  // Admissible-word counts for growth-rate cross-checks: words of length L
  // correspond to paths with L-1 steps.
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n), 1);
  for (int len = 1; len <= count_lengths; ++len) {
    counts.push_back(std::accumulate(c.begin(), c.end(), std::uint64_t{0}));
    std::vector<std::uint64_t> next(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (A.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
          next[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(j)];
        }
      }
    }
    c = std::move(next);
  }
  return {lambda, std::log(lambda), iterations, counts};
}

}  // namespace padicdyn
