// Copyright 2026 The qsbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// grid.hpp: time partitions of [0, T] and K-valued step functions on them.

#pragma once

#include "qsb/numerics.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace qsb {

/// Ascending partition 0 = t_0 < t_1 < ... < t_n = T. Slot j is [t_j, t_{j+1}).
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points);

    static TimeGrid uniform(double horizon, std::size_t slots);

    std::size_t slot_count() const noexcept { return points_.size() - 1; }
    double horizon() const noexcept { return points_.back(); }
    double point(std::size_t j) const { return points_.at(j); }
    double width(std::size_t j) const { return points_.at(j + 1) - points_.at(j); }
    double max_width() const;
    const std::vector<double>& points() const noexcept { return points_; }

    /// Index j with t_j == t (relative tolerance 1e-12). Throws
    /// std::out_of_range when t is not a grid point.
    std::size_t index_of(double t) const;
    bool contains_point(double t) const;

    /// Every slot split into `factor` equal sub-slots.
    TimeGrid refine(std::size_t factor) const;

    bool operator==(const TimeGrid& other) const noexcept { return points_ == other.points_; }

private:
    std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const TimeGrid>;

GridPtr make_grid(TimeGrid grid);

/// Element of K (x) L^2 that is constant on every slot of a grid.
class StepFunction {
public:
    StepFunction(GridPtr grid, std::vector<CVector> values);

    static StepFunction zero(GridPtr grid, int modes);
    static StepFunction constant(GridPtr grid, const CVector& value);

    const GridPtr& grid() const noexcept { return grid_; }
    int modes() const noexcept { return modes_; }
    std::size_t slot_count() const noexcept { return values_.size(); }
    const CVector& value(std::size_t slot) const { return values_.at(slot); }
    const std::vector<CVector>& values() const noexcept { return values_; }

    /// Keeps slots in [first, last) and zeroes the rest.
    StepFunction restricted(std::size_t first, std::size_t last) const;

    /// Same function expressed on grid().refine(factor).
    StepFunction refined(std::size_t factor, GridPtr fine_grid) const;

    double squared_norm() const;

private:
    GridPtr grid_;
    int modes_;
    std::vector<CVector> values_;
};

/// <f|g> = sum_j Delta_j <f_j|g_j>.
Complex l2_inner(const StepFunction& f, const StepFunction& g);

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what);

}  // namespace qsb
