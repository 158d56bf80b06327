#include "fraclyap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclyap/error.hpp"

namespace fraclyap {

Grid::Grid(double a, double b, std::size_t intervals) : a_(a), b_(b), n_(intervals) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("grid: need finite endpoints with a < b");
  }
  if (intervals < 2) throw DomainError("grid: need at least 2 subintervals");
}

double Grid::node(std::size_t i) const noexcept {
  if (i == n_) return b_;
  return a_ + (b_ - a_) * (static_cast<double>(i) / static_cast<double>(n_));
}

std::vector<double> Grid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
  return t;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("grid function: " + std::to_string(values_.size()) +
                       " values for " + std::to_string(grid_.size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("grid function: non-finite value at node " + std::to_string(i));
    }
  }
}

double GridFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const Grid& lhs, const Grid& rhs, const char* context) {
  if (!(lhs == rhs)) throw GridMismatch(std::string(context) + ": grids differ");
}

double sup_distance(const GridFunction& lhs, const GridFunction& rhs) {
  require_same_grid(lhs.grid(), rhs.grid(), "sup_distance");
  double m = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) m = std::max(m, std::abs(lhs[i] - rhs[i]));
  return m;
}

}  // namespace fraclyap
