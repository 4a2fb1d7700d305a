#include "hda/matrix.hpp"

#include <stdexcept>

namespace hda {

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("matrix multiply: shape mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.at(i, j) += a * other.at(k, j);
        }
    return out;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply: size");
    std::vector<BigInt> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

struct SnfWorker {
    IntMatrix a, u, uinv, v, vinv;

    explicit SnfWorker(const IntMatrix& m)
        : a(m),
          u(IntMatrix::identity(m.rows())),
          uinv(IntMatrix::identity(m.rows())),
          v(IntMatrix::identity(m.cols())),
          vinv(IntMatrix::identity(m.cols())) {}

    // row ops keep a = u * original * v, uinv = u^{-1}, vinv = v^{-1}
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        for (std::size_t r = 0; r < uinv.rows(); ++r)
            std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void row_add(std::size_t dst, std::size_t src, const BigInt& f) {
        if (f == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(dst, c) += f * a.at(src, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(dst, c) += f * u.at(src, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r)
            uinv.at(r, src) -= f * uinv.at(r, dst);
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (std::size_t r = 0; r < uinv.rows(); ++r)
            uinv.at(r, i) = -uinv.at(r, i);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (std::size_t c = 0; c < vinv.cols(); ++c)
            std::swap(vinv.at(i, c), vinv.at(j, c));
    }
    void col_add(std::size_t dst, std::size_t src, const BigInt& f) {
        if (f == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) += f * a.at(r, src);
        for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, dst) += f * v.at(r, src);
        for (std::size_t c = 0; c < vinv.cols(); ++c)
            vinv.at(src, c) -= f * vinv.at(dst, c);
    }

    // Diagonalize with pivoting by smallest nonzero magnitude. Returns rank.
    std::size_t diagonalize() {
        std::size_t t = 0;
        std::size_t n = std::min(a.rows(), a.cols());
        while (t < n) {
            std::size_t pr = t, pc = t;
            BigInt best = 0;
            for (std::size_t r = t; r < a.rows(); ++r)
                for (std::size_t c = t; c < a.cols(); ++c) {
                    const BigInt& x = a.at(r, c);
                    if (x == 0) continue;
                    BigInt ax = abs_big(x);
                    if (best == 0 || ax < best) {
                        best = ax;
                        pr = r;
                        pc = c;
                    }
                }
            if (best == 0) break;
            row_swap(t, pr);
            col_swap(t, pc);
            if (a.at(t, t) < 0) row_negate(t);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (std::size_t r = t + 1; r < a.rows(); ++r) {
                    if (a.at(r, t) == 0) continue;
                    BigInt q = a.at(r, t) / a.at(t, t);
                    row_add(r, t, -q);
                    if (a.at(r, t) != 0) {
                        row_swap(t, r);
                        if (a.at(t, t) < 0) row_negate(t);
                        clean = false;
                    }
                }
                for (std::size_t c = t + 1; c < a.cols(); ++c) {
                    if (a.at(t, c) == 0) continue;
                    BigInt q = a.at(t, c) / a.at(t, t);
                    col_add(c, t, -q);
                    if (a.at(t, c) != 0) {
                        col_swap(t, c);
                        if (a.at(t, t) < 0) row_negate(t);
                        clean = false;
                    }
                }
            }
            ++t;
        }
        return t;
    }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    SnfWorker w(m);
    std::size_t rank = w.diagonalize();
    // enforce d_i | d_{i+1}: mix violating pairs and rediagonalize
    for (int guard = 0; guard < 100000; ++guard) {
        bool violation = false;
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            if (w.a.at(i + 1, i + 1) % w.a.at(i, i) != 0) {
                w.col_add(i, i + 1, 1);
                violation = true;
                break;
            }
        }
        if (!violation) break;
        rank = w.diagonalize();
    }
    SmithResult res;
    res.d = w.a;
    res.u = w.u;
    res.u_inv = w.uinv;
    res.v = w.v;
    res.v_inv = w.vinv;
    res.rank = rank;
    for (std::size_t i = 0; i < rank; ++i)
        res.invariant_factors.push_back(w.a.at(i, i));
    return res;
}

std::size_t rank_over_q(const IntMatrix& a) {
    return smith_normal_form(a).rank;
}

std::size_t rank_mod_p(const IntMatrix& a, long long p) {
    std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            BigInt r = a.at(i, j) % p;
            if (r < 0) r += p;
            m[i][j] = r.convert_to<long long>();
        }
    auto inv_mod = [p](long long x) {
        long long r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        long long inv = inv_mod(m[rank][col]);
        for (std::size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            long long f = m[r][col];
            for (std::size_t j = col; j < cols; ++j)
                m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a,
                                                 const std::vector<BigInt>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size");
    SmithResult s = smith_normal_form(a);
    std::vector<BigInt> c = s.u.apply(b);
    std::vector<BigInt> y(a.cols(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.d.at(i, i) != 0) return std::nullopt;
            y[i] = c[i] / s.d.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

}  // namespace hda
