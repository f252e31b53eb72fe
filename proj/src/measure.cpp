#include "circderiv/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "circderiv/error.hpp"
#include "circderiv/maxflow.hpp"
#include "circderiv/text_util.hpp"

namespace circderiv {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr std::int64_t kCapacityScale = std::int64_t{1} << 40;
constexpr std::size_t kBruteForceMaxAtoms = 16;

// Integer capacities summing to exactly kCapacityScale (largest remainders).
std::vector<std::int64_t> apportion(std::span<const double> weights) {
  std::vector<std::int64_t> caps(weights.size());
  std::vector<double> remainder(weights.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double scaled = weights[i] * static_cast<double>(kCapacityScale);
    caps[i] = static_cast<std::int64_t>(std::floor(scaled));
    remainder[i] = scaled - static_cast<double>(caps[i]);
    total += caps[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  std::size_t k = 0;
  while (total < kCapacityScale) {
    ++caps[order[k++ % order.size()]];
    ++total;
  }
  while (total > kCapacityScale) {
    auto& c = caps[order[order.size() - 1 - (k++ % order.size())]];
    if (c > 0) {
      --c;
      --total;
    }
  }
  return caps;
}

struct AtomPair {
  double distance;
  std::uint32_t left;
  std::uint32_t right;
};

class CouplingOracle {
 public:
  CouplingOracle(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2)
      : m1_(m1), m2_(m2), caps1_(apportion(m1.weights())), caps2_(apportion(m2.weights())) {}

  // Coupled mass along pairs with distance <= eps, scanning every pair.
  double flow_by_scan(double eps) const {
    std::vector<AtomPair> pairs;
    for (std::uint32_t i = 0; i < m1_.size(); ++i)
      for (std::uint32_t j = 0; j < m2_.size(); ++j) {
        const double d = std::abs(m1_.atoms()[i] - m2_.atoms()[j]);
        if (d <= eps) pairs.push_back({d, i, j});
      }
    return flow(pairs);
  }

  std::vector<AtomPair> sorted_pairs_within(double bound) const {
    std::vector<AtomPair> pairs;
    for (std::uint32_t i = 0; i < m1_.size(); ++i)
      for (std::uint32_t j = 0; j < m2_.size(); ++j) {
        const double d = std::abs(m1_.atoms()[i] - m2_.atoms()[j]);
        if (d <= bound) pairs.push_back({d, i, j});
      }
    std::sort(pairs.begin(), pairs.end(), [](const AtomPair& a, const AtomPair& b) {
      return a.distance < b.distance || (a.distance == b.distance &&
                                         (a.left < b.left || (a.left == b.left && a.right < b.right)));
    });
    return pairs;
  }

  double flow(std::span<const AtomPair> pairs) const {
    const std::size_t n1 = m1_.size();
    const std::size_t n2 = m2_.size();
    const std::size_t source = n1 + n2;
    const std::size_t sink = source + 1;
    FlowNetwork net(n1 + n2 + 2);
    for (std::size_t i = 0; i < n1; ++i) net.add_edge(source, i, caps1_[i]);
    for (std::size_t j = 0; j < n2; ++j) net.add_edge(n1 + j, sink, caps2_[j]);
    for (const auto& p : pairs)
      net.add_edge(p.left, n1 + p.right, std::min(caps1_[p.left], caps2_[p.right]));
    return static_cast<double>(net.max_flow(source, sink)) / static_cast<double>(kCapacityScale);
  }

 private:
  const EmpiricalMeasure& m1_;
  const EmpiricalMeasure& m2_;
  std::vector<std::int64_t> caps1_;
  std::vector<std::int64_t> caps2_;
};

// Weight of `m` within distance eps (closed) of any atom selected by mask.
double neighbourhood_mass(const EmpiricalMeasure& from, std::uint32_t mask, const EmpiricalMeasure& m,
                          double eps) {
  double mass = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      if ((mask >> i) & 1u && std::abs(from.atoms()[i] - m.atoms()[j]) <= eps) {
        mass += m.weights()[j];
        break;
      }
    }
  }
  return mass;
}

// max over subsets A of supp(a) of the least eps with a(A) <= b(A^eps) + eps.
double one_sided_bruteforce(const EmpiricalMeasure& a, const EmpiricalMeasure& b,
                            std::span<const double> breakpoints) {
  double worst = 0.0;
  const std::uint32_t subsets = std::uint32_t{1} << a.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    double mass = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((mask >> i) & 1u) mass += a.weights()[i];
    double best = std::numeric_limits<double>::infinity();
    for (double d : breakpoints)
      best = std::min(best, std::max(d, mass - neighbourhood_mass(a, mask, b, d)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<cdouble> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) throw Error(ErrorKind::InvalidArgument, "measure needs at least one atom");
  if (atoms_.size() != weights_.size())
    throw Error(ErrorKind::InvalidArgument, "atom and weight counts differ");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidArgument, "measure weights must be positive");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= kWeightSumTol))
    throw Error(ErrorKind::InvalidArgument, "measure weights must sum to 1");
}

EmpiricalMeasure EmpiricalMeasure::from_points(std::vector<cdouble> points) {
  const double w = points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size());
  std::vector<double> weights(points.size(), w);
  return EmpiricalMeasure(std::move(points), std::move(weights));
}

ProhorovResult prohorov(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2, double tol) {
  if (!(tol >= 1e-9)) throw Error(ErrorKind::InvalidArgument, "Prohorov tolerance must be >= 1e-9");
  CouplingOracle oracle(m1, m2);

  // Find a feasible radius by doubling; pi <= 1 always holds.
  double bound = 1.0 / 64.0;
  while (bound < 1.0 && oracle.flow_by_scan(bound) < 1.0 - bound) bound *= 2.0;
  bound = std::min(bound, 1.0);

  const auto pairs = oracle.sorted_pairs_within(bound);
  // Breakpoints: 0 plus distinct pair distances, runs closer than tol merged
  // onto their largest member. ends[k] = number of pairs active at cand[k].
  std::vector<double> cand{0.0};
  std::vector<std::size_t> ends{0};
  double anchor = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double d = pairs[k].distance;
    if (d - anchor < tol) {
      cand.back() = d;
      ends.back() = k + 1;
    } else {
      anchor = d;
      cand.push_back(d);
      ends.push_back(k + 1);
    }
  }

  std::vector<double> flows(cand.size(), -1.0);
  auto flow_at = [&](std::size_t k) {
    if (flows[k] < 0.0) flows[k] = oracle.flow(std::span(pairs).first(ends[k]));
    return flows[k];
  };
  auto feasible = [&](std::size_t k) { return flow_at(k) >= 1.0 - cand[k]; };

  // First feasible breakpoint (feasibility is monotone in the radius).
  std::size_t lo = 0;
  std::size_t hi = cand.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) hi = mid;
    else lo = mid + 1;
  }

  ProhorovResult result{1.0, 1.0, 0.0};
  if (lo < cand.size()) result = {cand[lo], cand[lo], flow_at(lo)};
  if (lo > 0) {
    // Between cand[lo-1] and the next breakpoint the coupled mass is flat, so
    // eps = 1 - flow(cand[lo-1]) may already suffice.
    const double between = 1.0 - flow_at(lo - 1);
    if (between < result.distance) result = {between, between, flow_at(lo - 1)};
  }
  if (result.distance >= 1.0) result = {1.0, 1.0, result.certificate_flow};
  return result;
}

double prohorov_bruteforce(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2) {
  if (m1.size() + m2.size() > kBruteForceMaxAtoms)
    throw Error(ErrorKind::SupportTooLarge, "subset enumeration capped at 16 atoms in total");
  std::vector<double> breakpoints{0.0};
  for (const auto& a : m1.atoms())
    for (const auto& b : m2.atoms()) breakpoints.push_back(std::abs(a - b));
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  const double forward = one_sided_bruteforce(m1, m2, breakpoints);
  const double backward = one_sided_bruteforce(m2, m1, breakpoints);
  return std::min(1.0, std::max(forward, backward));
}

EmpiricalMeasure discretized_target(const CircleLaw& law, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "target needs at least one atom");
  if (const auto* atoms = std::get_if<AtomLaw>(&law.variant())) {
    std::vector<cdouble> points;
    std::vector<double> weights;
    for (std::size_t j = 0; j < atoms->points.size(); ++j) {
      if (atoms->weights[j] <= 0.0) continue;
      points.push_back(atoms->points[j]);
      weights.push_back(atoms->weights[j]);
    }
    return EmpiricalMeasure(std::move(points), std::move(weights));
  }
  double start = 0.0;
  double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  if (const auto* arc = std::get_if<ArcLaw>(&law.variant())) {
    step = (arc->hi - arc->lo) / static_cast<double>(m);
    start = arc->lo + 0.5 * step;
  }
  std::vector<cdouble> points(m);
  for (std::size_t j = 0; j < m; ++j) points[j] = std::polar(1.0, start + step * static_cast<double>(j));
  return EmpiricalMeasure::from_points(std::move(points));
}

double discretization_bias(const CircleLaw& law, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "target needs at least one atom");
  return 0.5 * law.support_length() / static_cast<double>(m);
}

double mass_in_disk(const EmpiricalMeasure& m, double r) {
  double mass = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (std::abs(m.atoms()[j]) <= r) mass += m.weights()[j];
  return std::min(mass, 1.0);
}

cdouble empirical_char(const EmpiricalMeasure& m, std::array<double, 2> t) {
  // Dividing by the stored weight total makes phi(0) = 1 exactly.
  cdouble acc = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const cdouble x = m.atoms()[j];
    acc += m.weights()[j] * std::polar(1.0, t[0] * x.real() + t[1] * x.imag());
    total += m.weights()[j];
  }
  return acc / total;
}

cdouble mixed_power_mean(const EmpiricalMeasure& m, unsigned mm, unsigned r) {
  if (r > mm) throw Error(ErrorKind::InvalidArgument, "mixed power needs r <= m");
  cdouble acc = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const cdouble x = m.atoms()[j];
    cdouble term = 1.0;
    for (unsigned k = 0; k < r; ++k) term *= x;
    for (unsigned k = r; k < mm; ++k) term *= std::conj(x);
    acc += m.weights()[j] * term;
  }
  return acc;
}

double pairing_fraction(std::span<const cdouble> targets, std::span<const cdouble> probes, double eps0) {
  if (targets.empty() || probes.empty())
    throw Error(ErrorKind::InvalidArgument, "pairing needs nonempty point lists");
  std::size_t hits = 0;
  for (const auto& p : probes) {
    for (const auto& t : targets) {
      if (std::abs(p - t) < eps0) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(probes.size());
}

void write_measure_csv(std::ostream& out, const EmpiricalMeasure& m, bool weighted) {
  out << (weighted ? "re,im,weight\n" : "re,im\n");
  for (std::size_t j = 0; j < m.size(); ++j) {
    out << detail::format_real(m.atoms()[j].real()) << ',' << detail::format_real(m.atoms()[j].imag());
    if (weighted) out << ',' << detail::format_real(m.weights()[j]);
    out << '\n';
  }
}

EmpiricalMeasure read_measure_csv(std::istream& in) {
  std::vector<cdouble> atoms;
  std::vector<double> weights;
  bool any_weighted = false;
  bool any_plain = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = detail::trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto fields = detail::split(row, ',');
    if (atoms.empty() && !any_weighted && !any_plain) {
      // header row: first field is not numeric
      try {
        detail::parse_real(fields[0]);
      } catch (const Error&) {
        continue;
      }
    }
    if (fields.size() != 2 && fields.size() != 3)
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected re,im[,weight]");
    atoms.emplace_back(detail::parse_real(fields[0]), detail::parse_real(fields[1]));
    if (fields.size() == 3) {
      any_weighted = true;
      weights.push_back(detail::parse_real(fields[2]));
    } else {
      any_plain = true;
    }
  }
  if (any_weighted && any_plain) throw Error(ErrorKind::Parse, "mixed weighted and unweighted rows");
  if (atoms.empty()) throw Error(ErrorKind::Parse, "no atoms in measure file");
  if (!any_weighted) return EmpiricalMeasure::from_points(std::move(atoms));
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::Parse, "weights must have a positive sum");
  for (auto& w : weights) w /= total;
  return EmpiricalMeasure(std::move(atoms), std::move(weights));
}

}  // namespace circderiv
