#pragma once

// Extrapolating predictors over the most recent accepted path points.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pathtrack/scalar/complex.hpp"

namespace pathtrack {

enum class PredictorKind { Secant, Quadratic };

std::string_view to_string(PredictorKind kind);
/// Parses "secant" or "quadratic"; throws std::invalid_argument otherwise.
PredictorKind parse_predictor(std::string_view text);

class DegenerateHistory : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Up to three accepted points (t, z), oldest first, with strictly
/// increasing t.
template <typename R>
class PathHistory {
public:
    struct Point {
        R t;
        std::vector<Complex<R>> z;
    };

    /// Appends an accepted point, dropping the oldest beyond three.
    /// Throws DegenerateHistory unless t exceeds the newest stored t.
    void push(const R& t, std::span<const Complex<R>> z)
    {
        if (size_ > 0 && !(newest().t < t)) {
            throw DegenerateHistory("path history needs strictly increasing t");
        }
        if (size_ == points_.size()) {
            std::rotate(points_.begin(), points_.begin() + 1, points_.end());
            --size_;
        }
        points_[size_].t = t;
        points_[size_].z.assign(z.begin(), z.end());
        ++size_;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    void clear() noexcept { size_ = 0; }

    /// i = 0 is the oldest stored point.
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& newest() const { return points_[size_ - 1]; }

private:
    std::array<Point, 3> points_{};
    std::size_t size_ = 0;
};

/// z + (z - z_prev) (t_new - t) / (t - t_prev); the newest z alone when only
/// one point is stored.
template <typename R>
void predict_secant(const PathHistory<R>& hist, const R& t_new, std::span<Complex<R>> out)
{
    if (hist.empty()) {
        throw DegenerateHistory("prediction needs at least one path point");
    }
    const auto& cur = hist.newest();
    if (hist.size() == 1) {
        std::copy(cur.z.begin(), cur.z.end(), out.begin());
        return;
    }
    const auto& prev = hist[hist.size() - 2];
    if (!(prev.t < cur.t)) {
        throw DegenerateHistory("secant prediction with coinciding t values");
    }
    const R ratio = (t_new - cur.t) / (cur.t - prev.t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = cur.z[i] + (cur.z[i] - prev.z[i]) * ratio;
    }
}

/// Per coordinate, the parabola through the three stored points evaluated
/// at t_new in Newton divided-difference form centred at the newest point:
///   p(s) = z2 + (s - t2) (d21 + (s - t1) d210).
/// Falls back to the secant with two points and to the newest z with one.
template <typename R>
void predict_quadratic(const PathHistory<R>& hist, const R& t_new, std::span<Complex<R>> out)
{
    if (hist.size() < 3) {
        predict_secant(hist, t_new, out);
        return;
    }
    const auto& p0 = hist[0];
    const auto& p1 = hist[1];
    const auto& p2 = hist[2];
    if (!(p0.t < p1.t && p1.t < p2.t)) {
        throw DegenerateHistory("quadratic prediction with coinciding t values");
    }
    const R inv21 = R(1.0) / (p2.t - p1.t);
    const R inv10 = R(1.0) / (p1.t - p0.t);
    const R inv20 = R(1.0) / (p2.t - p0.t);
    const R s2 = t_new - p2.t;
    const R s1 = t_new - p1.t;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Complex<R> d21 = (p2.z[i] - p1.z[i]) * inv21;
        const Complex<R> d10 = (p1.z[i] - p0.z[i]) * inv10;
        const Complex<R> d210 = (d21 - d10) * inv20;
        out[i] = p2.z[i] + (d21 + d210 * s1) * s2;
    }
}

template <typename R>
void predict(PredictorKind kind, const PathHistory<R>& hist, const R& t_new, std::span<Complex<R>> out)
{
    if (kind == PredictorKind::Quadratic) {
        predict_quadratic(hist, t_new, out);
    } else {
        predict_secant(hist, t_new, out);
    }
}

} // namespace pathtrack
