#include <cmath>
#include <sstream>

#include "midfix/error.hpp"
#include "midfix/lattice.hpp"

namespace midfix {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double grid_point(const IntervalMap& im, std::size_t i) {
  return static_cast<double>(i) / static_cast<double>(im.sample_grid);
}

IterationResult iterate(const IntervalMap& im, double x) {
  IterationResult r;
  double cur = x;
  for (std::size_t i = 0; i < im.max_iterations; ++i) {
    const double next = im.fn(cur);
    r.iterations = i + 1;
    const double step = std::abs(next - cur);
    cur = next;
    if (step < im.tolerance) break;
  }
  r.value = cur;
  r.residual = std::abs(im.fn(cur) - cur);
  r.status = r.residual <= im.tolerance ? IterationStatus::Converged
                                        : IterationStatus::NoConvergence;
  return r;
}

}  // namespace

IntervalMap check_interval_map(IntervalMap im) {
  if (!im.fn) throw Error(Errc::ValidationError, "interval map has no function");
  if (im.sample_grid == 0 || !(im.tolerance > 0.0) || im.max_iterations == 0) {
    throw Error(Errc::ValidationError,
                "sample_grid, tolerance and max_iterations must be positive");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i <= im.sample_grid; ++i) {
    const double x = grid_point(im, i);
    const double y = im.fn(x);
    if (!(y >= 0.0 && y <= 1.0)) {
      throw Error(Errc::ValidationError, "fn(" + num(x) + ") = " + num(y) + " leaves [0,1]",
                  {num(x), num(y)});
    }
    if (i > 0 && y < prev) {
      const double px = grid_point(im, i - 1);
      throw Error(Errc::NotMonotone, "fn decreases between " + num(px) + " and " + num(x),
                  {num(px), num(x)});
    }
    prev = y;
  }
  return im;
}

IterationResult mu_interval(const IntervalMap& im, double x) {
  if (!(x >= 0.0 && x <= 1.0) || im.fn(x) < x - im.tolerance) {
    throw Error(Errc::NotPreFixedNumeric, "not a pre-fixed point: " + num(x), {num(x)});
  }
  return iterate(im, x);
}

IterationResult nu_interval(const IntervalMap& im, double y) {
  if (!(y >= 0.0 && y <= 1.0) || im.fn(y) > y + im.tolerance) {
    throw Error(Errc::NotPostFixedNumeric, "not a post-fixed point: " + num(y), {num(y)});
  }
  return iterate(im, y);
}

std::vector<double> locate_fixpoints(const IntervalMap& im) {
  auto gap = [&](double x) { return im.fn(x) - x; };
  std::vector<double> roots;
  double prev_x = 0.0;
  double prev_g = gap(0.0);
  if (prev_g == 0.0) roots.push_back(0.0);
  for (std::size_t i = 1; i <= im.sample_grid; ++i) {
    const double x = grid_point(im, i);
    const double g = gap(x);
    if (g == 0.0) {
      roots.push_back(x);
    } else if (prev_g != 0.0 && (prev_g < 0.0) != (g < 0.0)) {
      double lo = prev_x;
      double hi = x;
      double glo = prev_g;
      while (hi - lo > im.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double gm = gap(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_g = g;
  }
  return roots;
}

IntervalMap five_fixpoint_map() {
  IntervalMap im;
  im.fn = [](double x) {
    return x + 16.0 * x * (x - 0.25) * (x - 0.5) * (x - 0.75) * (x - 1.0);
  };
  return check_interval_map(std::move(im));
}

}  // namespace midfix
