#include "sturmkit/oscillate.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "dopri.hpp"
#include "segments.hpp"
#include "sturmkit/error.hpp"
#include "sturmkit/format.hpp"
#include "sturmkit/parallel.hpp"

namespace sturmkit {

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Angle in [0, π) of (scale·v, v') after flipping the pair so that v > 0, or
// v = 0 with v' > 0. Crossing k times puts θ in [kπ, (k+1)π); this is the
// offset within the band.
double band_angle(double v, double dv, double scale = 1.0) {
  if (v < 0.0 || (v == 0.0 && dv < 0.0)) {
    v = -v;
    dv = -dv;
  }
  return std::atan2(scale * v, dv);
}

// |sin θ| for the standard Prüfer angle.
double abs_sin_theta(const State& s) { return std::abs(s.v) / std::hypot(s.v, s.dv); }

// Predicate bisection: pred(lo) is true, pred(hi) is false (never evaluated);
// narrows to adjacent doubles or `resolution`.
template <class Pred>
double bisect(double lo, double hi, Pred&& pred, double resolution = 0.0) {
  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || hi - lo <= resolution) return mid;
    (pred(mid) ? lo : hi) = mid;
  }
}

struct ScanResult {
  std::size_t count = 0;
  std::vector<double> zeros;
  bool zero_at_a = false;
  bool zero_at_b = false;
  State end{};
  long long band = 0;   // crossings since the interval start
  int start_sign = 1;   // sign of v inside band 0
};

class Scanner {
 public:
  Scanner(const IVP& ivp, const Interval& interval, double tol, bool locate)
      : ivp_(ivp), interval_(interval), tol_(tol), locate_(locate) {}

  ScanResult run() {
    const PiecewisePotential& q = ivp_.q();
    if (!q.domain().contains(interval_)) throw DomainError("interval outside the potential's domain");
    if (ivp_.t0() > interval_.a) throw DomainError("zero scans need t0 <= interval start");

    state_ = ivp_.t0() < interval_.a ? propagate(ivp_, interval_.a, tol_) : ivp_.initial();
    state_.t = interval_.a;
    sign_ = (state_.v > 0.0 || (state_.v == 0.0 && state_.dv > 0.0)) ? 1 : -1;
    out_.start_sign = sign_;

    const double alpha_a = band_angle(state_.v, state_.dv);
    out_.zero_at_a = abs_sin_theta(state_) < kEndpointZeroTol;
    if (out_.zero_at_a && alpha_a < kPi / 2) record(interval_.a);

    detail::for_each_segment(q, interval_.a, interval_.b, [&](const Piece& p, double s, double e) {
      if (!p.is_constant()) numeric_segment(p, s, e);
      else if (p.level() > 0.0) oscillatory_segment(p.level(), s, e);
      else monotone_segment(p.level(), s, e);
      state_.t = e;
    });

    const double alpha_b = band_angle(state_.v, state_.dv);
    out_.zero_at_b = abs_sin_theta(state_) < kEndpointZeroTol;
    if (out_.zero_at_b && alpha_b > kPi / 2) record(interval_.b);
    out_.end = state_;
    return std::move(out_);
  }

 private:
  void record(double t) {
    ++out_.count;
    if (locate_) out_.zeros.push_back(t);
  }

  void cross(long long n) {
    out_.band += n;
    if (n % 2 != 0) sign_ = -sign_;
  }

  // c > 0: with ω = √c the modified angle atan2(ωv, v') advances by exactly ωh.
  void oscillatory_segment(double c, double s, double e) {
    const double w = std::sqrt(c);
    const double h = e - s;
    const State start = state_;
    const State end = transfer_matrix(c, h).apply(start, h);
    const double gamma_s = band_angle(start.v, start.dv, w);
    const double gamma_e = band_angle(end.v, end.dv, w);
    const long long n = std::max(0LL, std::llround((gamma_s + w * h - gamma_e) / kPi));
    for (long long m = 1; m <= n; ++m) {
      if (!locate_) {
        ++out_.count;
        continue;
      }
      const double tau = (static_cast<double>(m) * kPi - gamma_s) / w;
      const double lo = std::max(0.0, tau - kPi / (2 * w));
      const double hi = std::min(h, tau + kPi / (2 * w));
      const int band_sign = (m % 2 == 1) ? sign_ : -sign_;
      const double root = bisect(lo, hi, [&](double x) {
        return sign_of(transfer_matrix(c, x).apply(start, x).v) == band_sign;
      });
      record(s + root);
    }
    cross(n);
    state_ = end;
  }

  // c ≤ 0: at most one zero per segment.
  void monotone_segment(double c, double s, double e) {
    const double h = e - s;
    const State start = state_;
    const State end = transfer_matrix(c, h).apply(start, h);
    const bool crossed = end.v == 0.0 || sign_of(end.v) != sign_;
    if (crossed) {
      if (locate_) {
        const double root = bisect(0.0, h, [&](double x) {
          return sign_of(transfer_matrix(c, x).apply(start, x).v) == sign_;
        });
        record(s + root);
      } else {
        ++out_.count;
      }
      cross(1);
    }
    state_ = end;
  }

  // Expression pieces: integrate θ' = cos²θ + q sin²θ, (log r)' = (1 − q) sin θ cos θ.
  void numeric_segment(const Piece& p, double s, double e) {
    auto rhs = [&p](double t, const detail::Vec2& y) -> detail::Vec2 {
      const double qt = p.value(t);
      const double sn = std::sin(y[0]);
      const double cs = std::cos(y[0]);
      return {cs * cs + qt * sn * sn, (1.0 - qt) * sn * cs};
    };
    const double base = static_cast<double>(out_.band) * kPi;
    detail::Vec2 y{base + band_angle(state_.v, state_.dv), std::log(std::hypot(state_.v, state_.dv))};
    const long long start_floor = out_.band;
    long long highest = start_floor;
    double t_prev = s;
    detail::Vec2 y_prev = y;

    detail::integrate_dp45(rhs, s, y, e, tol_, {}, [&](double t, const detail::Vec2& u) {
      const long long fl = static_cast<long long>(std::floor(u[0] / kPi));
      for (long long m = highest + 1; m <= fl; ++m) {
        if (!locate_) {
          ++out_.count;
          continue;
        }
        const double target = static_cast<double>(m) * kPi;
        const double root = bisect(
            t_prev, t,
            [&](double x) {
              detail::Vec2 z = y_prev;
              detail::integrate_dp45(rhs, t_prev, z, x, tol_, {}, [](double, const detail::Vec2&) {});
              return z[0] < target;
            },
            1e-12);
        record(root);
      }
      highest = std::max(highest, fl);
      t_prev = t;
      y_prev = u;
    });

    const double r = std::exp(y[1]);
    const int flip = sign_;  // v = sign · r · sin(θ − band·π) inside the current band
    State end{e, r * std::sin(y[0] - base), r * std::cos(y[0] - base)};
    end.v *= flip;
    end.dv *= flip;
    const double alpha = band_angle(end.v, end.dv);
    const long long band_end = std::llround((y[0] - alpha) / kPi);
    cross(std::max(band_end, highest) - start_floor);
    state_ = end;
  }

  const IVP& ivp_;
  Interval interval_;
  double tol_;
  bool locate_;
  State state_{};
  int sign_ = 1;
  ScanResult out_;
};

ScanResult scan(const IVP& ivp, const Interval& interval, double tol, bool locate) {
  return Scanner(ivp, interval, tol, locate).run();
}

}  // namespace

std::size_t count_zeros(const IVP& ivp, const Interval& interval, double tol) {
  return scan(ivp, interval, tol, false).count;
}

ZeroSet locate_zeros(const IVP& ivp, const Interval& interval, bool closed, double tol) {
  ScanResult r = scan(ivp, interval, tol, true);
  ZeroSet zs{std::move(r.zeros), interval, closed};
  if (!closed && !zs.zeros.empty()) {
    if (r.zero_at_b) zs.zeros.pop_back();
    if (r.zero_at_a && !zs.zeros.empty()) zs.zeros.erase(zs.zeros.begin());
  }
  return zs;
}

PruferState prufer_state(const IVP& ivp, double t, double tol) {
  const State s0 = ivp.initial();
  if (t == ivp.t0()) return {t, std::atan2(s0.v, s0.dv), std::log(std::hypot(s0.v, s0.dv))};
  const ScanResult r = scan(ivp, Interval(ivp.t0(), t), tol, false);
  // θ(t0) = atan2(v0, v0') sits in band 0 shifted by π when v starts negative.
  const double theta0 = std::atan2(s0.v, s0.dv);
  const double lift0 = theta0 - band_angle(s0.v, s0.dv);
  const double theta = lift0 + static_cast<double>(r.band) * kPi + band_angle(r.end.v, r.end.dv);
  return {t, theta, std::log(std::hypot(r.end.v, r.end.dv))};
}

std::optional<double> first_conjugate_point(const PiecewisePotential& q, double a, double b, double tol) {
  const ZeroSet zs = locate_zeros(IVP(q, a, 0.0, 1.0), Interval(a, b), true, tol);
  for (double z : zs.zeros)
    if (z > a) return z;
  return std::nullopt;
}

bool is_disconjugate(const PiecewisePotential& q, const Interval& interval, double tol) {
  return !first_conjugate_point(q, interval.a, interval.b, tol).has_value();
}

IVP direction_ivp(const PiecewisePotential& q, double a, double theta) {
  return IVP(q, a, std::cos(theta), std::sin(theta));
}

std::vector<std::size_t> sweep_zero_counts(const PiecewisePotential& q, const Interval& interval, std::size_t n,
                                           bool closed, double tol) {
  std::vector<std::size_t> counts(n);
  parallel_for(n, [&](std::size_t j) {
    const IVP ivp = direction_ivp(q, interval.a, kPi * static_cast<double>(j) / static_cast<double>(n));
    counts[j] = closed ? count_zeros(ivp, interval, tol) : locate_zeros(ivp, interval, false, tol).size();
  });
  return counts;
}

std::optional<double> zero_free_direction(const PiecewisePotential& q, const Interval& interval, double tol) {
  if (!is_disconjugate(q, interval, tol)) return std::nullopt;
  const auto counts = sweep_zero_counts(q, interval, kSweepDirections, true, tol);
  for (std::size_t j = 0; j < counts.size(); ++j)
    if (counts[j] == 0) return kPi * static_cast<double>(j) / static_cast<double>(kSweepDirections);

  // y (y(a) = 0, y'(a) = 1) is positive on (a, b] and z (z(b) = 0, z'(b) = −1)
  // is positive on [a, b), so every positive combination is zero-free. At a,
  // z = (y2(b), −y1(b)) in the (v, v') plane; take the angular bisector.
  const State y1 = propagate(IVP(q, interval.a, 1.0, 0.0), interval.b, tol);
  const State y2 = propagate(IVP(q, interval.a, 0.0, 1.0), interval.b, tol);
  const double z_angle = std::atan2(-y1.v, y2.v);
  auto zero_free = [&](double theta) { return count_zeros(direction_ivp(q, interval.a, theta), interval, tol) == 0; };
  auto normalize = [](double theta) { return theta < 0.0 ? theta + kPi : theta; };

  const double bisector = 0.5 * (z_angle + kPi / 2);
  if (zero_free(bisector)) return normalize(bisector);
  constexpr int kFine = 4096;
  for (int j = 1; j < kFine; ++j) {
    const double theta = z_angle + (kPi / 2 - z_angle) * j / kFine;
    if (zero_free(theta)) return normalize(theta);
  }
  throw InternalError("equation is disconjugate on [" + format_real(interval.a) + ", " + format_real(interval.b) +
                      "] but no zero-free direction was found");
}

bool check_interlacing(const PiecewisePotential& q, const Interval& interval, double tol) {
  const ZeroSet z1 = locate_zeros(IVP(q, interval.a, 1.0, 0.0), interval, true, tol);
  const ZeroSet z2 = locate_zeros(IVP(q, interval.a, 0.0, 1.0), interval, true, tol);
  auto separated = [](const std::vector<double>& outer, const std::vector<double>& inner) {
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
      const auto between = std::count_if(inner.begin(), inner.end(),
                                         [&](double z) { return outer[i] < z && z < outer[i + 1]; });
      if (between != 1) return false;
    }
    return true;
  };
  return separated(z1.zeros, z2.zeros) && separated(z2.zeros, z1.zeros);
}

void write_zeroset_csv(std::ostream& out, const ZeroSet& zs) {
  out << "index,t\n";
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) out << i << ',' << format_real(zs.zeros[i]) << '\n';
}

}  // namespace sturmkit
