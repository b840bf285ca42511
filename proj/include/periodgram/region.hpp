#pragma once

// Semialgebraic regions with membership, bounding box and a sampler.
// Image regions (under phi or an affine map) keep their source region; the
// Fekete optimizer works on the source points and pushes them through the
// map when evaluating a basis.

#include <array>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "periodgram/errors.hpp"

namespace periodgram {

enum class RegionKind {
    interval,
    box,
    triangle,
    ball,
    tau_eps,
    two_param_image,
    affine_image,
    phi_image,
    phi_x_image,
    phi_y_image
};

class Region {
public:
    static constexpr double kBoundaryTol = 1e-14;

    static Region interval(double a, double b) {
        Region r(RegionKind::interval, 1);
        r.params_ = {a, b};
        r.bbox_ = {{{a, b}, {0, 0}}};
        return r;
    }
    static Region box(double a, double b, double c, double d) {
        Region r(RegionKind::box, 2);
        r.params_ = {a, b, c, d};
        r.bbox_ = {{{a, b}, {c, d}}};
        return r;
    }
    static Region triangle(std::array<double, 2> v1, std::array<double, 2> v2,
                           std::array<double, 2> v3) {
        Region r(RegionKind::triangle, 2);
        r.params_ = {v1[0], v1[1], v2[0], v2[1], v3[0], v3[1]};
        r.bbox_ = {{{std::min({v1[0], v2[0], v3[0]}), std::max({v1[0], v2[0], v3[0]})},
                    {std::min({v1[1], v2[1], v3[1]}), std::max({v1[1], v2[1], v3[1]})}}};
        return r;
    }
    static Region ball(double radius) {
        Region r(RegionKind::ball, 2);
        r.params_ = {radius};
        r.bbox_ = {{{-radius, radius}, {-radius, radius}}};
        return r;
    }
    static Region tau_eps(double eps) {
        if (!(eps > 0 && eps <= 1)) throw Error("tau_eps: need 0 < eps <= 1");
        Region r(RegionKind::tau_eps, 2);
        r.params_ = {eps};
        r.bbox_ = {{{0, 1}, {0, 1}}};
        return r;
    }
    // image of the square under (f1, f2): 0 <= v <= 1, 0 <= u <= ((v-1)/(v+1))^2
    static Region two_param_image() {
        Region r(RegionKind::two_param_image, 2);
        r.bbox_ = {{{0, 1}, {0, 1}}};
        return r;
    }
    static Region affine_image(std::array<std::array<double, 2>, 2> p, Region source) {
        double det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
        if (det == 0) throw SingularMatrix("affine_image: matrix is singular");
        Region r(RegionKind::affine_image, 2);
        r.params_ = {p[0][0], p[0][1], p[1][0], p[1][1]};
        r.source_ = std::make_shared<Region>(std::move(source));
        // bbox from the transformed source box corners
        double lo0 = 1e300, hi0 = -1e300, lo1 = 1e300, hi1 = -1e300;
        for (int cx = 0; cx < 2; ++cx)
            for (int cy = 0; cy < 2; ++cy) {
                double x = cx ? r.source_->bbox()[0].second : r.source_->bbox()[0].first;
                double y = cy ? r.source_->bbox()[1].second : r.source_->bbox()[1].first;
                double u = p[0][0] * x + p[0][1] * y;
                double v = p[1][0] * x + p[1][1] * y;
                lo0 = std::min(lo0, u);
                hi0 = std::max(hi0, u);
                lo1 = std::min(lo1, v);
                hi1 = std::max(hi1, v);
            }
        r.bbox_ = {{{lo0, hi0}, {lo1, hi1}}};
        return r;
    }
    static Region phi_image(Region source) { return image(RegionKind::phi_image, std::move(source)); }
    static Region phi_x_image(Region source) {
        return image(RegionKind::phi_x_image, std::move(source));
    }
    static Region phi_y_image(Region source) {
        return image(RegionKind::phi_y_image, std::move(source));
    }

    RegionKind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::array<std::pair<double, double>, 2>& bbox() const { return bbox_; }
    const Region* source() const { return source_.get(); }
    double param(size_t i) const { return params_.at(i); }

    // phi-type images are optimized through the map: points live in the
    // source region and are transformed before evaluating a basis.
    bool pullback() const {
        return kind_ == RegionKind::phi_image || kind_ == RegionKind::phi_x_image ||
               kind_ == RegionKind::phi_y_image;
    }

    std::vector<double> transform(const std::vector<double>& p) const {
        switch (kind_) {
            case RegionKind::phi_image: return {p[0] * p[1], p[0] + p[1]};
            case RegionKind::phi_x_image: return {p[0] * p[1], p[0]};
            case RegionKind::phi_y_image: return {p[0] * p[1], p[1]};
            case RegionKind::affine_image:
                return {params_[0] * p[0] + params_[1] * p[1],
                        params_[2] * p[0] + params_[3] * p[1]};
            default: return p;
        }
    }

    bool contains(const std::vector<double>& p) const {
        const double tol = kBoundaryTol;
        switch (kind_) {
            case RegionKind::interval:
                return p.size() == 1 && p[0] >= params_[0] - tol && p[0] <= params_[1] + tol;
            case RegionKind::box:
                return p.size() == 2 && p[0] >= params_[0] - tol && p[0] <= params_[1] + tol &&
                       p[1] >= params_[2] - tol && p[1] <= params_[3] + tol;
            case RegionKind::triangle: {
                if (p.size() != 2) return false;
                double x1 = params_[0], y1 = params_[1], x2 = params_[2], y2 = params_[3],
                       x3 = params_[4], y3 = params_[5];
                double area = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
                double s1 = (x2 - p[0]) * (y3 - p[1]) - (x3 - p[0]) * (y2 - p[1]);
                double s2 = (x3 - p[0]) * (y1 - p[1]) - (x1 - p[0]) * (y3 - p[1]);
                double s3 = (x1 - p[0]) * (y2 - p[1]) - (x2 - p[0]) * (y1 - p[1]);
                double sgn = area >= 0 ? 1.0 : -1.0;
                double slack = std::abs(area) * tol * 1e4 + tol;
                return sgn * s1 >= -slack && sgn * s2 >= -slack && sgn * s3 >= -slack;
            }
            case RegionKind::ball:
                return p.size() == 2 &&
                       p[0] * p[0] + p[1] * p[1] <= params_[0] * params_[0] + tol;
            case RegionKind::tau_eps:
                return p.size() == 2 && p[0] >= -tol && p[0] <= 1 + tol && p[1] >= -tol &&
                       p[1] <= 1 + tol && p[0] * p[1] <= params_[0] + tol;
            case RegionKind::two_param_image: {
                if (p.size() != 2) return false;
                double u = p[0], v = p[1];
                if (v < -tol || v > 1 + tol || u < -tol) return false;
                double w = (v - 1) / (v + 1);
                return u <= w * w + tol;
            }
            case RegionKind::affine_image: {
                // invert the linear map and test the source
                double a = params_[0], b = params_[1], c = params_[2], d = params_[3];
                double det = a * d - b * c;
                std::vector<double> q{(d * p[0] - b * p[1]) / det,
                                      (-c * p[0] + a * p[1]) / det};
                return source_->contains(q);
            }
            case RegionKind::phi_image: {
                // (x, y) has x+y = v, xy = u: roots of t^2 - v t + u
                double u = p[0], v = p[1];
                double disc = v * v - 4 * u;
                if (disc < -tol) return false;
                double root = std::sqrt(std::max(0.0, disc));
                std::vector<double> q1{(v + root) / 2, (v - root) / 2};
                std::vector<double> q2{(v - root) / 2, (v + root) / 2};
                return source_->contains(q1) || source_->contains(q2);
            }
            case RegionKind::phi_x_image: {
                double u = p[0], x = p[1];
                if (std::abs(x) < tol) return std::abs(u) <= tol && source_->contains({x, 0.0});
                return source_->contains({x, u / x});
            }
            case RegionKind::phi_y_image: {
                double u = p[0], y = p[1];
                if (std::abs(y) < tol) return std::abs(u) <= tol && source_->contains({0.0, y});
                return source_->contains({u / y, y});
            }
        }
        return false;
    }

    // Rejection from the bounding box; image kinds sample the source and map.
    std::vector<double> sample(std::mt19937_64& rng) const {
        if (source_) {
            std::vector<double> p = source_->sample(rng);
            return transform(p);
        }
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int attempt = 0; attempt < 100000; ++attempt) {
            std::vector<double> p(static_cast<size_t>(dim_));
            for (int k = 0; k < dim_; ++k) {
                auto [lo, hi] = bbox_[static_cast<size_t>(k)];
                p[static_cast<size_t>(k)] = lo + (hi - lo) * u(rng);
            }
            if (contains(p)) return p;
        }
        throw Error("Region::sample: rejection sampling failed (empty region?)");
    }

private:
    Region(RegionKind k, int d) : kind_(k), dim_(d) {}
    static Region image(RegionKind k, Region source) {
        if (source.dim() != 2) throw DimensionMismatch("phi images need a 2-D source");
        Region r(k, 2);
        r.source_ = std::make_shared<Region>(std::move(source));
        r.bbox_ = r.source_->bbox();  // rough; refined lazily if ever needed
        return r;
    }

    RegionKind kind_;
    int dim_;
    std::vector<double> params_;
    std::array<std::pair<double, double>, 2> bbox_{};
    std::shared_ptr<Region> source_;
};

}  // namespace periodgram
