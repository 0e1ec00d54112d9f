// cbn - Newton-type solver for conic linear programs over conic boxes
// Copyright 2026 cbn contributors
// Licensed under the Apache License, Version 2.0

#include "cbn/cones.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cbn/errors.hpp"

namespace cbn {

// --- Cone ------------------------------------------------------------------

Cone Cone::orthant(std::size_t n) {
    if (n == 0) throw DimensionMismatch("Cone::orthant: n must be positive");
    Cone c;
    c.kind_ = ConeKind::Orthant;
    c.n_ = n;
    c.ambient_ = n;
    return c;
}

Cone Cone::lorentz(std::size_t n) {
    if (n == 0) throw DimensionMismatch("Cone::lorentz: n must be positive");
    Cone c;
    c.kind_ = ConeKind::Lorentz;
    c.n_ = n;
    c.ambient_ = n + 1;
    return c;
}

Cone Cone::psd(std::size_t n) {
    if (n == 0) throw DimensionMismatch("Cone::psd: n must be positive");
    Cone c;
    c.kind_ = ConeKind::Psd;
    c.n_ = n;
    c.ambient_ = n * (n + 1) / 2;
    return c;
}

Cone Cone::product(std::vector<Cone> blocks) {
    if (blocks.empty()) throw DimensionMismatch("Cone::product: needs at least one block");
    Cone c;
    c.kind_ = ConeKind::Product;
    c.blocks_ = std::move(blocks);
    c.n_ = c.blocks_.size();
    c.ambient_ = 0;
    for (const Cone& b : c.blocks_) c.ambient_ += b.ambient_dim();
    return c;
}

std::size_t Cone::order() const { return n_; }

const std::vector<Cone>& Cone::blocks() const { return blocks_; }

bool Cone::operator==(const Cone& other) const {
    if (kind_ != other.kind_ || n_ != other.n_) return false;
    if (kind_ != ConeKind::Product) return true;
    return blocks_ == other.blocks_;
}

// --- svec / smat -------------------------------------------------------------

std::size_t svec_dim(std::size_t n) { return n * (n + 1) / 2; }

std::size_t smat_side(std::size_t len) {
    // solve n(n+1)/2 = len
    const std::size_t n =
        static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0 + 0.5);
    if (svec_dim(n) != len) throw DimensionMismatch("smat_side: length is not triangular");
    return n;
}

Vector svec(const DenseMatrix& x) {
    if (x.rows() != x.cols()) throw DimensionMismatch("svec: matrix not square");
    const std::size_t n = x.rows();
    static const double kRt2 = std::sqrt(2.0);
    Vector v(svec_dim(n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v[k++] = x(i, i);
        for (std::size_t j = i + 1; j < n; ++j) v[k++] = kRt2 * 0.5 * (x(i, j) + x(j, i));
    }
    return v;
}

DenseMatrix smat(std::span<const double> v) {
    const std::size_t n = smat_side(v.size());
    static const double kInvRt2 = 1.0 / std::sqrt(2.0);
    DenseMatrix x(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        x(i, i) = v[k++];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double val = kInvRt2 * v[k++];
            x(i, j) = val;
            x(j, i) = val;
        }
    }
    return x;
}

// --- membership / projection -------------------------------------------------

namespace {

bool contains_impl(const Cone& cone, std::span<const double> x, double tol) {
    switch (cone.kind()) {
        case ConeKind::Orthant: {
            const double slack = -tol * (1.0 + norm_inf(x));
            for (double v : x)
                if (v < slack) return false;
            return true;
        }
        case ConeKind::Lorentz: {
            const double tail = norm2(x.subspan(1));
            return x[0] - tail >= -tol * (1.0 + norm2(x));
        }
        case ConeKind::Psd: {
            SymEig eig = sym_eig(smat(x));
            if (eig.values.empty()) return true;
            const double scale =
                1.0 + std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
            return eig.values.back() >= -tol * scale;
        }
        case ConeKind::Product: {
            std::size_t off = 0;
            for (const Cone& b : cone.blocks()) {
                if (!contains_impl(b, x.subspan(off, b.ambient_dim()), tol)) return false;
                off += b.ambient_dim();
            }
            return true;
        }
    }
    return false;
}

void project_impl(const Cone& cone, std::span<const double> x, std::span<double> out) {
    switch (cone.kind()) {
        case ConeKind::Orthant: {
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], 0.0);
            return;
        }
        case ConeKind::Lorentz: {
            const double x0 = x[0];
            const double tail = norm2(x.subspan(1));
            if (tail <= x0) {
                std::copy(x.begin(), x.end(), out.begin());
            } else if (tail <= -x0) {
                std::fill(out.begin(), out.end(), 0.0);
            } else {
                const double t = 0.5 * (x0 + tail);
                out[0] = t;
                const double f = t / tail;
                for (std::size_t i = 1; i < x.size(); ++i) out[i] = f * x[i];
            }
            return;
        }
        case ConeKind::Psd: {
            SymEig eig = sym_eig(smat(x));
            const std::size_t n = eig.vectors.rows();
            DenseMatrix p(n, n);
            for (std::size_t j = 0; j < n; ++j) {
                const double lam = eig.values[j];
                if (lam <= 0.0) break;  // sorted descending
                for (std::size_t a = 0; a < n; ++a) {
                    const double va = lam * eig.vectors(a, j);
                    for (std::size_t b = 0; b < n; ++b) p(a, b) += va * eig.vectors(b, j);
                }
            }
            Vector pv = svec(p);
            std::copy(pv.begin(), pv.end(), out.begin());
            return;
        }
        case ConeKind::Product: {
            std::size_t off = 0;
            for (const Cone& b : cone.blocks()) {
                project_impl(b, x.subspan(off, b.ambient_dim()), out.subspan(off, b.ambient_dim()));
                off += b.ambient_dim();
            }
            return;
        }
    }
}

}  // namespace

bool contains(const Cone& cone, std::span<const double> x, double tol) {
    if (x.size() != cone.ambient_dim())
        throw DimensionMismatch("contains: vector size != cone ambient dimension");
    return contains_impl(cone, x, tol);
}

Vector project_cone(const Cone& cone, std::span<const double> x) {
    if (x.size() != cone.ambient_dim())
        throw DimensionMismatch("project_cone: vector size != cone ambient dimension");
    Vector out(x.size(), 0.0);
    project_impl(cone, x, out);
    return out;
}

MoreauParts moreau_decompose(const Cone& cone, std::span<const double> c) {
    MoreauParts parts;
    parts.toward = project_cone(cone, c);
    parts.against = subtract(parts.toward, c);
    return parts;
}

// --- ConicBox ----------------------------------------------------------------

ConicBox::ConicBox(Cone cone, Vector l, Vector u)
    : cone_(std::move(cone)), l_(std::move(l)), u_(std::move(u)) {
    if (l_.size() != cone_.ambient_dim() || u_.size() != cone_.ambient_dim())
        throw DimensionMismatch("ConicBox: endpoint size != cone ambient dimension");
    if (!all_finite(l_) || !all_finite(u_))
        throw std::invalid_argument("ConicBox: endpoints must be finite");
    const Vector w = subtract(u_, l_);
    if (norm2(w) == 0.0) throw DegenerateBox("ConicBox: box width u - l is zero");
    if (!contains_impl(cone_, w, 1e-10))
        throw std::invalid_argument("ConicBox: width u - l is not in the cone");
}

Vector ConicBox::width() const { return subtract(u_, l_); }

bool ConicBox::contains_point(std::span<const double> x, double tol) const {
    if (x.size() != cone_.ambient_dim())
        throw DimensionMismatch("contains_point: vector size != ambient dimension");
    const Vector lo = subtract(x, l_);
    if (!contains_impl(cone_, lo, tol)) return false;
    const Vector hi = subtract(u_, x);
    return contains_impl(cone_, hi, tol);
}

// --- linear optimization oracles ----------------------------------------------

LinOptResult linopt_box_orthant(std::span<const double> l, std::span<const double> u,
                                std::span<const double> c) {
    if (l.size() != u.size() || l.size() != c.size())
        throw DimensionMismatch("linopt_box_orthant: size mismatch");
    LinOptResult r;
    r.point.resize(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        r.point[i] = (c[i] < 0.0) ? l[i] : u[i];
        r.value += c[i] * r.point[i];
    }
    return r;
}

namespace {

LorentzBoxCache lorentz_cache_from_width(Vector w) {
    LorentzBoxCache cache;
    cache.w = std::move(w);
    const std::span<const double> wt(cache.w.data() + 1, cache.w.size() - 1);
    const double w0 = cache.w[0];
    const double tail = norm2(wt);
    // A valid (nonzero) Lorentz width always has w0 > 0.
    if (w0 <= 0.0) throw DegenerateBox("lorentz_cache: box width is zero");
    cache.boundary = tail >= w0 * (1.0 - 1e-12);
    cache.wbar.assign(wt.begin(), wt.end());
    scale(1.0 / w0, cache.wbar);
    cache.wbar0 = (w0 * w0 - tail * tail) / (2.0 * w0);
    cache.rho = std::sqrt(std::max(0.5 * w0 * cache.wbar0, 0.0));
    if (!cache.boundary && tail > 0.0) {
        cache.alpha = (1.0 - 2.0 * cache.rho / w0) / (tail * tail);
        cache.beta = (w0 / (2.0 * cache.rho) - 1.0) / (tail * tail);
    }
    return cache;
}

LinOptResult lorentz_linopt_impl(std::span<const double> l, std::span<const double> u,
                                 const LorentzBoxCache& cache, std::span<const double> c) {
    LinOptResult best;
    best.point.assign(l.begin(), l.end());
    best.value = dot(c, l);

    if (!cache.boundary) {
        const std::size_t n = l.size() - 1;
        const std::span<const double> wt(cache.w.data() + 1, n);
        const std::span<const double> ct = c.subspan(1);
        const double w0 = cache.w[0];
        const double f0 = c[0] / w0;

        Vector y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = ct[i] + f0 * wt[i];
        const double scale_ref = norm2(ct) + std::abs(f0) * norm2(wt) + 1e-300;
        axpy(cache.beta * dot(y, wt), wt, y);
        const double ynorm = norm2(y);
        if (ynorm <= 1e-14 * scale_ref) {
            // Objective constant on the ellipsoid: any direction works; pin a
            // deterministic one and place it on the sphere of radius rho.
            y.assign(n, cache.rho / std::sqrt(static_cast<double>(n)));
        } else {
            scale(cache.rho / ynorm, y);
        }
        axpy(cache.beta * dot(y, wt), wt, y);
        axpy(0.5, wt, y);  // y now holds the tilde part of the ellipsoid argmax
        const double x0 = dot(y, wt) / w0 + cache.wbar0;

        Vector cand(l.size());
        cand[0] = l[0] + x0;
        for (std::size_t i = 0; i < n; ++i) cand[i + 1] = l[i + 1] + y[i];
        const double cval = dot(c, cand);
        if (cval > best.value) {
            best.point = std::move(cand);
            best.value = cval;
        }
    }

    const double uval = dot(c, u);
    if (uval > best.value) {
        best.point.assign(u.begin(), u.end());
        best.value = uval;
    }
    return best;
}

DenseMatrix psd_linopt_impl(const DenseMatrix& l_mat, const DenseMatrix& v,
                            const DenseMatrix& c_mat) {
    const std::size_t n = v.rows();
    const std::size_t r = v.cols();
    // C' = V^T C V with C symmetrized
    DenseMatrix c_sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c_sym(i, j) = 0.5 * (c_mat(i, j) + c_mat(j, i));
    const DenseMatrix cp = v.transposed().multiply(c_sym.multiply(v));

    SymEig eig = sym_eig(cp);
    DenseMatrix z(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        if (eig.values[j] < 0.0) break;  // descending order: rest are negative
        for (std::size_t a = 0; a < r; ++a) {
            const double va = eig.vectors(a, j);
            for (std::size_t b = 0; b < r; ++b) z(a, b) += va * eig.vectors(b, j);
        }
    }

    DenseMatrix x = v.multiply(z.multiply(v.transposed()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double val = 0.5 * (x(i, j) + x(j, i)) + 0.5 * (l_mat(i, j) + l_mat(j, i));
            x(i, j) = val;
            x(j, i) = val;
        }
    return x;
}

}  // namespace

LorentzBoxCache lorentz_cache(const ConicBox& box) {
    if (box.cone().kind() != ConeKind::Lorentz)
        throw DimensionMismatch("lorentz_cache: box is not over a single Lorentz cone");
    return lorentz_cache_from_width(box.width());
}

LinOptResult linopt_box_lorentz(const ConicBox& box, const LorentzBoxCache& cache,
                                std::span<const double> c) {
    if (box.cone().kind() != ConeKind::Lorentz)
        throw DimensionMismatch("linopt_box_lorentz: box is not over a single Lorentz cone");
    if (c.size() != box.ambient_dim())
        throw DimensionMismatch("linopt_box_lorentz: objective size != ambient dimension");
    return lorentz_linopt_impl(box.lower(), box.upper(), cache, c);
}

PsdBoxCache psd_cache(const ConicBox& box) {
    if (box.cone().kind() != ConeKind::Psd)
        throw DimensionMismatch("psd_cache: box is not over a single PSD cone");
    const Vector w = box.width();
    const DenseMatrix w_mat = smat(w);
    PsdBoxCache cache;
    try {
        cache.v = cholesky(w_mat, 1e-10);
    } catch (const NotPsd&) {
        // The box constructor admits widths with eigenvalues down to
        // -1e-10 * (1 + scale); clip those and factor the projection.
        SymEig eig = sym_eig(w_mat);
        const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
        const double floor = -1e-8 * (1.0 + lmax);
        for (double lam : eig.values)
            if (lam < floor) throw;
        const std::size_t n = w_mat.rows();
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (eig.values[i] > 1e-10 * std::max(lmax, 1e-300)) keep.push_back(i);
        DenseMatrix v(n, keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j) {
            const double s = std::sqrt(eig.values[keep[j]]);
            for (std::size_t i = 0; i < n; ++i) v(i, j) = s * eig.vectors(i, keep[j]);
        }
        cache.v = std::move(v);
    }
    return cache;
}

DenseMatrix linopt_box_psd(const DenseMatrix& l_mat, const PsdBoxCache& cache,
                           const DenseMatrix& c_mat) {
    if (l_mat.rows() != l_mat.cols() || c_mat.rows() != c_mat.cols())
        throw DimensionMismatch("linopt_box_psd: matrices must be square");
    if (l_mat.rows() != cache.v.rows() || c_mat.rows() != cache.v.rows())
        throw DimensionMismatch("linopt_box_psd: matrix sides differ from cache");
    return psd_linopt_impl(l_mat, cache.v, c_mat);
}

// --- BoxOracle -----------------------------------------------------------------

BoxOracle::BoxOracle(ConicBox box) : box_(std::move(box)) {
    flatten(box_.cone(), box_.lower(), box_.upper(), 0);
}

void BoxOracle::flatten(const Cone& cone, std::span<const double> l,
                        std::span<const double> u, std::size_t offset) {
    if (cone.kind() == ConeKind::Product) {
        std::size_t off = 0;
        for (const Cone& b : cone.blocks()) {
            const std::size_t d = b.ambient_dim();
            flatten(b, l.subspan(off, d), u.subspan(off, d), offset + off);
            off += d;
        }
        return;
    }
    Block blk;
    blk.offset = offset;
    blk.dim = cone.ambient_dim();
    blk.kind = cone.kind();
    blk.l.assign(l.begin(), l.end());
    blk.u.assign(u.begin(), u.end());
    const Vector w = subtract(u, l);
    blk.fixed = norm2(w) == 0.0;
    if (!blk.fixed) {
        if (cone.kind() == ConeKind::Lorentz) {
            blk.lorentz = lorentz_cache_from_width(w);
        } else if (cone.kind() == ConeKind::Psd) {
            ConicBox view(cone, blk.l, blk.u);
            blk.psd = psd_cache(view);
            blk.psd_lower = smat(blk.l);
        }
    }
    blocks_.push_back(std::move(blk));
}

LinOptResult BoxOracle::maximize(std::span<const double> c) const {
    if (c.size() != box_.ambient_dim())
        throw DimensionMismatch("BoxOracle::maximize: objective size != ambient dimension");
    LinOptResult total;
    total.point.assign(box_.ambient_dim(), 0.0);
    for (const Block& blk : blocks_) {
        const std::span<const double> cb = c.subspan(blk.offset, blk.dim);
        Vector xb;
        if (blk.fixed) {
            xb = blk.l;
        } else {
            switch (blk.kind) {
                case ConeKind::Orthant:
                    xb = linopt_box_orthant(blk.l, blk.u, cb).point;
                    break;
                case ConeKind::Lorentz:
                    xb = lorentz_linopt_impl(blk.l, blk.u, *blk.lorentz, cb).point;
                    break;
                case ConeKind::Psd: {
                    const DenseMatrix x =
                        psd_linopt_impl(blk.psd_lower, blk.psd->v, smat(cb));
                    xb = svec(x);
                    break;
                }
                case ConeKind::Product:
                    break;  // flattened away
            }
        }
        std::copy(xb.begin(), xb.end(), total.point.begin() + static_cast<long>(blk.offset));
        total.value += dot(cb, xb);
    }
    return total;
}

LinOptResult linopt_box(const ConicBox& box, std::span<const double> c) {
    return BoxOracle(box).maximize(c);
}

// --- diameter bound -------------------------------------------------------------

namespace {

double diam_sq_impl(const Cone& cone, std::span<const double> l, std::span<const double> u) {
    switch (cone.kind()) {
        case ConeKind::Orthant: {
            const double d = distance2(u, l);
            return d * d;
        }
        case ConeKind::Lorentz: {
            const double w0 = u[0] - l[0];
            const double d = 2.0 * std::sqrt(2.0) * w0;
            return d * d;
        }
        case ConeKind::Psd: {
            const std::size_t n = cone.order();
            double trace = 0.0;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i) {
                trace += u[idx] - l[idx];
                idx += n - i;  // next diagonal entry in row-major upper packing
            }
            const double d = 2.0 * trace;
            return d * d;
        }
        case ConeKind::Product: {
            double acc = 0.0;
            std::size_t off = 0;
            for (const Cone& b : cone.blocks()) {
                acc += diam_sq_impl(b, l.subspan(off, b.ambient_dim()),
                                    u.subspan(off, b.ambient_dim()));
                off += b.ambient_dim();
            }
            return acc;
        }
    }
    return 0.0;
}

}  // namespace

double diam_upper_bound(const ConicBox& box) {
    return std::sqrt(diam_sq_impl(box.cone(), box.lower(), box.upper()));
}

}  // namespace cbn
