#include "nilmap/kernels.hpp"

#include "nilmap/errors.hpp"

#include <exception>
#include <mutex>

#ifdef NILMAP_HAVE_OPENMP
#include <omp.h>
#endif

namespace nilmap::kernels {

namespace {

void check_product_shape(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    if (a.nvars() != b.nvars()) throw DimensionMismatch("matrix entries live in different rings");
}

Polynomial product_entry(const PolyMatrix& a, const PolyMatrix& b, std::size_t r, std::size_t c) {
    Polynomial s(a.nvars());
    for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        s += a(r, k) * b(k, c);
    }
    return s;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

void check_minor_size(const PolyMatrix& m, std::size_t k) {
    if (!m.is_square()) throw DimensionMismatch("principal minors need a square matrix");
    if (k < 1 || k > m.rows()) throw std::out_of_range("principal minor size out of range");
}

}  // namespace

PolyMatrix multiply_serial(const PolyMatrix& a, const PolyMatrix& b) {
    check_product_shape(a, b);
    PolyMatrix out(a.rows(), b.cols(), a.nvars());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = product_entry(a, b, r, c);
    return out;
}

PolyMatrix multiply_parallel(const PolyMatrix& a, const PolyMatrix& b) {
    check_product_shape(a, b);
    PolyMatrix out(a.rows(), b.cols(), a.nvars());
    const std::size_t cols = b.cols();
    parallel_for(a.rows() * cols, [&](std::size_t idx) {
        const std::size_t r = idx / cols;
        const std::size_t c = idx % cols;
        out(r, c) = product_entry(a, b, r, c);
    });
    return out;
}

Polynomial principal_minor_sum_serial(const PolyMatrix& m, std::size_t k) {
    check_minor_size(m, k);
    Polynomial sum(m.nvars());
    for (const auto& s : subsets_of_size(m.rows(), k)) sum += poly_det(m.submatrix(s, s));
    return sum;
}

Polynomial principal_minor_sum_parallel(const PolyMatrix& m, std::size_t k) {
    check_minor_size(m, k);
    const auto subsets = subsets_of_size(m.rows(), k);
    std::vector<Polynomial> minors(subsets.size(), Polynomial(m.nvars()));
    parallel_for(subsets.size(), [&](std::size_t i) { minors[i] = poly_det(m.submatrix(subsets[i], subsets[i])); });
    Polynomial sum(m.nvars());
    for (const auto& p : minors) sum += p;
    return sum;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
#ifdef NILMAP_HAVE_OPENMP
    if (count > 1 && omp_get_max_threads() > 1 && !omp_in_parallel()) {
        std::exception_ptr error;
        std::mutex error_mutex;
        const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < n; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

bool openmp_enabled() {
#ifdef NILMAP_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef NILMAP_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace nilmap::kernels
