// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/mnp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

Vector combine(const std::vector<Vector>& vecs, const Vector& coeffs) {
    Vector out(vecs.front().size(), 0.0);
    for (std::size_t i = 0; i < vecs.size(); ++i) axpy(coeffs[i], vecs[i], out);
    return out;
}

void clip_and_renormalize(Vector& coeffs) {
    double total = 0.0;
    for (double& c : coeffs) {
        if (c < 0.0) c = 0.0;
        total += c;
    }
    if (total > 0.0)
        for (double& c : coeffs) c /= total;
}

// Drop corral members whose coefficient fell to (numerical) zero.
void prune(Corral& corral) {
    Corral kept;
    double total = 0.0;
    for (std::size_t i = 0; i < corral.size(); ++i) {
        if (corral.coeffs[i] <= 1e-12) continue;
        kept.points.push_back(std::move(corral.points[i]));
        kept.images.push_back(std::move(corral.images[i]));
        kept.coeffs.push_back(corral.coeffs[i]);
        total += corral.coeffs[i];
    }
    if (kept.size() == 0) {
        // Safety net: keep the heaviest entry. Unreachable when coefficients
        // sum to ~1, but cheap insurance against pathological inputs.
        std::size_t best = 0;
        for (std::size_t i = 1; i < corral.size(); ++i)
            if (corral.coeffs[i] > corral.coeffs[best]) best = i;
        kept.points.push_back(std::move(corral.points[best]));
        kept.images.push_back(std::move(corral.images[best]));
        kept.coeffs.push_back(1.0);
        total = 1.0;
    }
    for (double& c : kept.coeffs) c /= total;
    corral = std::move(kept);
}

// The corral's images, viewed as columns [image_i; 1], are linearly
// dependent whenever the corral exceeds m + 2 members. Shift the convex
// coefficients along a dependence direction until one hits zero; the
// represented image point is unchanged.
void caratheodory_reduce(Corral& corral, std::size_t max_size) {
    while (corral.size() > max_size) {
        const std::size_t k = corral.size();
        const std::size_t d = corral.images.front().size() + 1;
        DenseMatrix e(d, k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i + 1 < d; ++i) e(i, j) = corral.images[j][i];
            e(d - 1, j) = 1.0;
        }
        const DenseMatrix gram = e.transposed().multiply(e);
        SymEig eig = sym_eig(gram);
        // Eigenvector of the smallest eigenvalue spans a dependence.
        Vector nu(k);
        for (std::size_t i = 0; i < k; ++i) nu[i] = eig.vectors(i, k - 1);

        double t = -1.0;
        const double nu_floor = 1e-14 * (norm_inf(nu) + 1e-300);
        for (std::size_t i = 0; i < k; ++i) {
            if (nu[i] > nu_floor) {
                const double ratio = corral.coeffs[i] / nu[i];
                if (t < 0.0 || ratio < t) t = ratio;
            }
        }
        if (t < 0.0) {
            // No positive component (fully degenerate direction); flip sign.
            for (double& v : nu) v = -v;
            for (std::size_t i = 0; i < k; ++i) {
                if (nu[i] > nu_floor) {
                    const double ratio = corral.coeffs[i] / nu[i];
                    if (t < 0.0 || ratio < t) t = ratio;
                }
            }
            if (t < 0.0) return;  // cannot reduce; bail out
        }
        for (std::size_t i = 0; i < k; ++i) corral.coeffs[i] -= t * nu[i];
        clip_and_renormalize(corral.coeffs);
        const std::size_t before = corral.size();
        prune(corral);
        if (corral.size() >= before) return;  // no progress; avoid spinning
    }
}

}  // namespace

AffineMin affine_minimize(const Corral& corral, std::span<const double> target) {
    if (corral.size() == 0) throw DimensionMismatch("affine_minimize: empty corral");
    if (corral.images.front().size() != target.size())
        throw DimensionMismatch("affine_minimize: image/target dimension mismatch");
    const std::size_t k = corral.size();
    AffineMin out;
    if (k == 1) {
        out.point = corral.images.front();
        out.coeffs = {1.0};
        return out;
    }
    const Vector& v0 = corral.images.front();
    const std::size_t dim = target.size();
    DenseMatrix d(dim, k - 1);
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < dim; ++i) d(i, j - 1) = corral.images[j][i] - v0[i];
    const Vector rhs = subtract(target, v0);
    const Vector mu = least_squares(d, rhs);

    out.coeffs.assign(k, 0.0);
    double mu_sum = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
        out.coeffs[j] = mu[j - 1];
        mu_sum += mu[j - 1];
    }
    out.coeffs[0] = 1.0 - mu_sum;
    out.point = v0;
    for (std::size_t j = 1; j < k; ++j) axpy(mu[j - 1], corral.images[j], out.point);
    axpy(-(mu_sum), v0, out.point);
    return out;
}

HullStep line_search_to_hull(const Corral& corral, std::span<const double> prev,
                             std::span<const double> new_coeffs) {
    if (new_coeffs.size() != corral.size() || prev.size() != corral.size())
        throw DimensionMismatch("line_search_to_hull: coefficient size mismatch");
    double lambda = 1.0;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        if (new_coeffs[i] < prev[i]) {
            const double ratio = prev[i] / (prev[i] - new_coeffs[i]);
            lambda = std::min(lambda, ratio);
        }
    }
    lambda = std::clamp(lambda, 0.0, 1.0);

    HullStep out;
    out.lambda_hat = lambda;
    out.corral = corral;
    for (std::size_t i = 0; i < prev.size(); ++i) {
        const double blended = (1.0 - lambda) * prev[i] + lambda * new_coeffs[i];
        out.corral.coeffs[i] = std::max(blended, 0.0);
    }
    prune(out.corral);
    return out;
}

MnpResult mnp_project(const LiftedSystem& sys, const BoxOracle& oracle,
                      std::span<const double> target, Vector start, const MnpConfig& cfg) {
    if (target.size() != sys.lifted_dim())
        throw DimensionMismatch("mnp_project: target size != lifted dimension");
    if (start.size() != sys.ambient_dim())
        throw DimensionMismatch("mnp_project: start size != ambient dimension");
    if (!(cfg.eps > 0.0)) throw std::invalid_argument("mnp_project: eps must be positive");

    MnpResult res;
    Corral corral;
    corral.images.push_back(sys.apply(start));
    corral.points.push_back(std::move(start));
    corral.coeffs.assign(1, 1.0);
    Vector cur = corral.images.front();

    const std::size_t max_corral = sys.lifted_dim() + 1;  // m + 2
    const std::size_t minor_cap = cfg.minor_factor * max_corral;
    std::size_t zero_steps = 0;
    res.termination = MnpTermination::IterCap;
    bool done = false;

    for (std::size_t major = 0; major < cfg.max_major && !done; ++major) {
        std::size_t minor = 0;
        for (;;) {
            AffineMin aff = affine_minimize(corral, target);
            ++res.affine_solves;
            double min_coeff = aff.coeffs.front();
            for (double c : aff.coeffs) min_coeff = std::min(min_coeff, c);
            if (min_coeff >= -1e-10) {
                corral.coeffs = std::move(aff.coeffs);
                clip_and_renormalize(corral.coeffs);
                cur = std::move(aff.point);
                caratheodory_reduce(corral, max_corral);
                break;
            }
            HullStep hs = line_search_to_hull(corral, corral.coeffs, aff.coeffs);
            corral = std::move(hs.corral);
            cur = combine(corral.images, corral.coeffs);
            if (hs.lambda_hat == 0.0) {
                if (++zero_steps >= 2) {
                    res.termination = MnpTermination::Stalled;
                    done = true;
                    break;
                }
            } else {
                zero_steps = 0;
            }
            if (++minor > minor_cap) {
                res.termination = MnpTermination::IterCap;
                done = true;
                break;
            }
        }
        if (done) break;

        ++res.major_iterations;
        const Vector r = subtract(cur, target);
        res.dist = norm2(r);
        Vector obj = sys.abar().apply_transpose(r);
        scale(-1.0, obj);
        LinOptResult lin = oracle.maximize(obj);
        ++res.oracle_calls;
        const Vector s_img = sys.apply(lin.point);
        res.gap = 2.0 * (dot(cur, r) - dot(s_img, r));
        if (cfg.log_iterations) res.iterations.push_back({res.dist, res.gap, corral.size()});
        if (res.gap < cfg.eps) {
            res.termination = MnpTermination::Converged;
            break;
        }

        // A re-proposed corral member means the oracle cannot add anything
        // new at this precision.
        const double dup_tol = 1e-12 * (1.0 + norm_inf(s_img));
        bool duplicate = false;
        for (const Vector& img : corral.images) {
            double diff = 0.0;
            for (std::size_t i = 0; i < img.size(); ++i)
                diff = std::max(diff, std::abs(img[i] - s_img[i]));
            if (diff <= dup_tol) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) {
            res.termination = MnpTermination::Stalled;
            break;
        }
        corral.points.push_back(std::move(lin.point));
        corral.images.push_back(std::move(s_img));
        corral.coeffs.push_back(0.0);
    }

    res.x_hat = combine(corral.points, corral.coeffs);
    res.proj = combine(corral.images, corral.coeffs);
    res.dist = distance2(res.proj, target);
    if (res.termination != MnpTermination::Converged) {
        // Report the honest certificate at the returned iterate.
        const Vector r = subtract(res.proj, target);
        Vector obj = sys.abar().apply_transpose(r);
        scale(-1.0, obj);
        LinOptResult lin = oracle.maximize(obj);
        ++res.oracle_calls;
        res.gap = 2.0 * (dot(res.proj, r) - dot(sys.apply(lin.point), r));
    }
    return res;
}

MnpResult mnp_project(const LiftedSystem& sys, const ConicBox& box,
                      std::span<const double> target, Vector start, const MnpConfig& cfg) {
    return mnp_project(sys, BoxOracle(box), target, std::move(start), cfg);
}

}  // namespace cbn
