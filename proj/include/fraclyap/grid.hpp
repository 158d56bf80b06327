#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fraclyap {

// Uniform grid t_i = a + i (b - a) / n, i = 0..n.
class Grid {
 public:
  Grid(double a, double b, std::size_t intervals);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  std::size_t intervals() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1; }
  double step() const noexcept { return (b_ - a_) / static_cast<double>(n_); }

  // t_0 == a and t_n == b exactly.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

// Real values sampled at every node of a grid. All values are finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  template <typename F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid.node(i));
    return GridFunction(grid, std::move(values));
  }

  static GridFunction constant(const Grid& grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.size(), value));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Largest |value| over the nodes.
  double sup_norm() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Throws GridMismatch unless both functions live on the same grid.
void require_same_grid(const Grid& lhs, const Grid& rhs, const char* context);

double sup_distance(const GridFunction& lhs, const GridFunction& rhs);

}  // namespace fraclyap
