// AVX2 variants. Compiled with -mavx2 only in this translation unit; entry
// is guarded by runtime dispatch. Operation order mirrors kernels_scalar.cpp
// exactly so both backends produce identical bits.

#include "kernels_detail.hpp"

#include <immintrin.h>

namespace hystera::kernels {

using detail::interp_one;
using detail::phi_one;

namespace {

struct TablePack {
    __m256d x0, x1, inv_dx;
    __m128i max_idx;
    const double* y;
    explicit TablePack(const TableView& t)
        : x0(_mm256_set1_pd(t.x0)),
          x1(_mm256_set1_pd(t.x1)),
          inv_dx(_mm256_set1_pd(t.inv_dx)),
          max_idx(_mm_set1_epi32(static_cast<int>(t.n_intervals) - 1)),
          y(t.y) {}
};

// Index/fraction split shared by both branch tables (same v grid).
struct Split {
    __m128i idx;
    __m256d f;
};

inline Split split(const TablePack& t, __m256d x) {
    const __m256d c = _mm256_min_pd(_mm256_max_pd(x, t.x0), t.x1);
    const __m256d s = _mm256_mul_pd(_mm256_sub_pd(c, t.x0), t.inv_dx);
    __m128i idx = _mm256_cvttpd_epi32(s);
    idx = _mm_min_epi32(idx, t.max_idx);
    const __m256d f = _mm256_sub_pd(s, _mm256_cvtepi32_pd(idx));
    return {idx, f};
}

inline __m256d gather_interp(const double* y, const Split& sp) {
    const __m256d y0 = _mm256_i32gather_pd(y, sp.idx, 8);
    const __m256d y1 = _mm256_i32gather_pd(y + 1, sp.idx, 8);
    return _mm256_add_pd(y0, _mm256_mul_pd(sp.f, _mm256_sub_pd(y1, y0)));
}

inline __m256d negate(__m256d v) {
    return _mm256_xor_pd(v, _mm256_set1_pd(-0.0));
}

inline double reduce4(__m256d acc) {
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s = _mm_add_pd(lo, hi);  // (a0+a2, a1+a3)
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

}  // namespace

namespace avx2 {

void table_eval(const TableView& t, std::span<const double> x, std::span<double> out) {
    const TablePack tp(t);
    const std::size_t n = x.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const Split sp = split(tp, _mm256_loadu_pd(x.data() + i));
        _mm256_storeu_pd(out.data() + i, gather_interp(tp.y, sp));
    }
    for (std::size_t i = n4; i < n; ++i) out[i] = interp_one(t, x[i]);
}

void phi_tau_eval(const TableView& rho_i, const TableView& rho_d,
                  std::span<const double> u, std::span<const double> v,
                  double inv_tau, std::span<double> out) {
    const TablePack ti(rho_i), td(rho_d);
    const __m256d vit = _mm256_set1_pd(inv_tau);
    const __m256d zero = _mm256_setzero_pd();
    const std::size_t n = u.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v.data() + i);
        const __m256d uu = _mm256_loadu_pd(u.data() + i);
        const Split sp = split(ti, vv);
        const __m256d ri = gather_interp(ti.y, sp);
        const __m256d rd = gather_interp(td.y, sp);
        const __m256d pos = _mm256_max_pd(_mm256_sub_pd(uu, rd), zero);
        const __m256d neg = _mm256_min_pd(_mm256_sub_pd(uu, ri), zero);
        const __m256d s =
            _mm256_add_pd(_mm256_mul_pd(vit, pos), _mm256_mul_pd(vit, neg));
        _mm256_storeu_pd(out.data() + i, negate(s));
    }
    for (std::size_t i = n4; i < n; ++i)
        out[i] = phi_one(rho_i, rho_d, u[i], v[i], inv_tau);
}

void band_mismatch_sq(const TableView& rho_i, const TableView& rho_d,
                      std::span<const double> w, std::span<const double> u,
                      std::span<const double> v, double& sum_d, double& sum_i) {
    const TablePack ti(rho_i), td(rho_d);
    const __m256d zero = _mm256_setzero_pd();
    __m256d accd = zero, acci = zero;
    const std::size_t n = u.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d vv = _mm256_loadu_pd(v.data() + i);
        const __m256d uu = _mm256_loadu_pd(u.data() + i);
        const __m256d ww = _mm256_loadu_pd(w.data() + i);
        const Split sp = split(ti, vv);
        const __m256d ri = gather_interp(ti.y, sp);
        const __m256d rd = gather_interp(td.y, sp);
        const __m256d pd = _mm256_max_pd(_mm256_sub_pd(uu, rd), zero);
        const __m256d pi = _mm256_max_pd(_mm256_sub_pd(ri, uu), zero);
        accd = _mm256_add_pd(accd, _mm256_mul_pd(ww, _mm256_mul_pd(pd, pd)));
        acci = _mm256_add_pd(acci, _mm256_mul_pd(ww, _mm256_mul_pd(pi, pi)));
    }
    double sd = reduce4(accd);
    double si = reduce4(acci);
    for (std::size_t i = n4; i < n; ++i) {
        const double rd = interp_one(rho_d, v[i]);
        const double ri = interp_one(rho_i, v[i]);
        const double pd = std::max(u[i] - rd, 0.0);
        const double pi = std::max(ri - u[i], 0.0);
        sd += w[i] * (pd * pd);
        si += w[i] * (pi * pi);
    }
    sum_d = sd;
    sum_i = si;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n = w.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d ww = _mm256_loadu_pd(w.data() + i);
        const __m256d aa = _mm256_loadu_pd(a.data() + i);
        const __m256d bb = _mm256_loadu_pd(b.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(ww, _mm256_mul_pd(aa, bb)));
    }
    double s = reduce4(acc);
    for (std::size_t i = n4; i < n; ++i) s += w[i] * (a[i] * b[i]);
    return s;
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n = w.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                        _mm256_loadu_pd(b.data() + i));
        const __m256d ww = _mm256_loadu_pd(w.data() + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(ww, _mm256_mul_pd(d, d)));
    }
    double s = reduce4(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        s += w[i] * (d * d);
    }
    return s;
}

void scaled_add(std::span<double> out, std::span<const double> a, double alpha,
                std::span<const double> b) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t n = a.size();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d r = _mm256_add_pd(
            _mm256_loadu_pd(a.data() + i),
            _mm256_mul_pd(va, _mm256_loadu_pd(b.data() + i)));
        _mm256_storeu_pd(out.data() + i, r);
    }
    for (std::size_t i = n4; i < n; ++i) out[i] = a[i] + alpha * b[i];
}

}  // namespace avx2
}  // namespace hystera::kernels
