#ifndef HDA_MATRIX_HPP
#define HDA_MATRIX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace hda {

using BigInt = boost::multiprecision::cpp_int;

// Dense exact-integer matrix.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    bool is_zero() const;
    static IntMatrix identity(std::size_t n);
    IntMatrix multiply(const IntMatrix& other) const;
    std::vector<BigInt> apply(const std::vector<BigInt>& v) const;  // A*v
    IntMatrix transposed() const;
    bool operator==(const IntMatrix&) const = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

// U*A*V = D with U, V unimodular and D diagonal, diagonal entries
// d_1 | d_2 | ... (nonnegative). Inverses are tracked alongside.
struct SmithResult {
    IntMatrix d;
    IntMatrix u, u_inv;
    IntMatrix v, v_inv;
    std::size_t rank = 0;
    std::vector<BigInt> invariant_factors;  // nonzero diagonal entries
};

SmithResult smith_normal_form(const IntMatrix& a);

std::size_t rank_over_q(const IntMatrix& a);
std::size_t rank_mod_p(const IntMatrix& a, long long p);

// Integer solution of A x = b, if one exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& a,
                                                 const std::vector<BigInt>& b);

}  // namespace hda

#endif
