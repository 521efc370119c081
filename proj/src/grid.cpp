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

#include "qsb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsb {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("TimeGrid: need at least one slot");
    if (points_.front() != 0.0) throw std::invalid_argument("TimeGrid: first point must be 0");
    for (std::size_t j = 0; j + 1 < points_.size(); ++j) {
        if (!(points_[j + 1] > points_[j]) || !std::isfinite(points_[j + 1])) {
            throw std::invalid_argument("TimeGrid: points must be finite and strictly increasing");
        }
    }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t slots) {
    if (slots == 0 || !(horizon > 0.0)) {
        throw std::invalid_argument("TimeGrid::uniform: need slots >= 1 and horizon > 0");
    }
    std::vector<double> pts(slots + 1);
    for (std::size_t j = 0; j <= slots; ++j) {
        pts[j] = horizon * static_cast<double>(j) / static_cast<double>(slots);
    }
    pts.back() = horizon;
    return TimeGrid(std::move(pts));
}

double TimeGrid::max_width() const {
    double w = 0.0;
    for (std::size_t j = 0; j < slot_count(); ++j) w = std::max(w, width(j));
    return w;
}

bool TimeGrid::contains_point(double t) const {
    const double tol = 1e-12 * std::max(1.0, horizon());
    return std::any_of(points_.begin(), points_.end(),
                       [&](double p) { return std::abs(p - t) <= tol; });
}

std::size_t TimeGrid::index_of(double t) const {
    const double tol = 1e-12 * std::max(1.0, horizon());
    for (std::size_t j = 0; j < points_.size(); ++j) {
        if (std::abs(points_[j] - t) <= tol) return j;
    }
    std::ostringstream os;
    os << "TimeGrid: time " << t << " is not a grid point of [0, " << horizon() << "]";
    throw std::out_of_range(os.str());
}

TimeGrid TimeGrid::refine(std::size_t factor) const {
    if (factor == 0) throw std::invalid_argument("TimeGrid::refine: factor must be >= 1");
    std::vector<double> pts;
    pts.reserve(slot_count() * factor + 1);
    for (std::size_t j = 0; j < slot_count(); ++j) {
        for (std::size_t k = 0; k < factor; ++k) {
            pts.push_back(points_[j] + width(j) * static_cast<double>(k) / static_cast<double>(factor));
        }
    }
    pts.push_back(points_.back());
    return TimeGrid(std::move(pts));
}

GridPtr make_grid(TimeGrid grid) {
    return std::make_shared<const TimeGrid>(std::move(grid));
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
    if (!a || !b || (a != b && !(*a == *b))) {
        throw std::invalid_argument(std::string(what) + ": grids differ");
    }
}

StepFunction::StepFunction(GridPtr grid, std::vector<CVector> values)
    : grid_(std::move(grid)), modes_(0), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("StepFunction: null grid");
    if (values_.size() != grid_->slot_count()) {
        throw std::invalid_argument("StepFunction: value count must equal slot count");
    }
    modes_ = static_cast<int>(values_.front().size());
    for (const auto& v : values_) {
        if (v.size() != modes_) throw std::invalid_argument("StepFunction: inconsistent dimension");
        if (!v.allFinite()) throw std::invalid_argument("StepFunction: non-finite value");
    }
}

StepFunction StepFunction::zero(GridPtr grid, int modes) {
    const std::size_t n = grid->slot_count();
    return StepFunction(std::move(grid), std::vector<CVector>(n, CVector::Zero(modes)));
}

StepFunction StepFunction::constant(GridPtr grid, const CVector& value) {
    const std::size_t n = grid->slot_count();
    return StepFunction(std::move(grid), std::vector<CVector>(n, value));
}

StepFunction StepFunction::restricted(std::size_t first, std::size_t last) const {
    std::vector<CVector> v = values_;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j < first || j >= last) v[j].setZero();
    }
    return StepFunction(grid_, std::move(v));
}

StepFunction StepFunction::refined(std::size_t factor, GridPtr fine_grid) const {
    if (fine_grid->slot_count() != slot_count() * factor) {
        throw std::invalid_argument("StepFunction::refined: fine grid has the wrong slot count");
    }
    std::vector<CVector> v;
    v.reserve(fine_grid->slot_count());
    for (const auto& x : values_) {
        for (std::size_t k = 0; k < factor; ++k) v.push_back(x);
    }
    return StepFunction(std::move(fine_grid), std::move(v));
}

double StepFunction::squared_norm() const {
    double s = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) s += grid_->width(j) * values_[j].squaredNorm();
    return s;
}

Complex l2_inner(const StepFunction& f, const StepFunction& g) {
    require_same_grid(f.grid(), g.grid(), "l2_inner");
    Complex s = 0.0;
    for (std::size_t j = 0; j < f.slot_count(); ++j) {
        s += f.grid()->width(j) * f.value(j).dot(g.value(j));
    }
    return s;
}

}  // namespace qsb
