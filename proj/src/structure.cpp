#include "coopinf/structure.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <vector>

namespace coopinf {

namespace {

void require_square(const Matrix& m, const char* op) {
    if (!m.is_square()) {
        throw DimensionError(std::string(op) + " requires a square matrix");
    }
}

// Kuhn's augmenting-path matching over an n x n bipartite graph given by a
// predicate adj(row, col). Returns true iff a perfect matching exists; if
// `out` is given it receives the row -> column assignment.
template <typename Adj>
bool perfect_matching(std::size_t n, Adj adj, Permutation* out) {
    std::vector<std::ptrdiff_t> match_col(n, -1); // column -> row
    std::vector<char> seen(n, 0);

    auto augment = [&](auto&& self, std::size_t row) -> bool {
        for (std::size_t col = 0; col < n; ++col) {
            if (!adj(row, col) || seen[col]) continue;
            seen[col] = 1;
            if (match_col[col] < 0 ||
                self(self, static_cast<std::size_t>(match_col[col]))) {
                match_col[col] = static_cast<std::ptrdiff_t>(row);
                return true;
            }
        }
        return false;
    };

    for (std::size_t row = 0; row < n; ++row) {
        std::fill(seen.begin(), seen.end(), 0);
        if (!augment(augment, row)) return false;
    }
    if (out) {
        out->assign(n, 0);
        for (std::size_t col = 0; col < n; ++col) {
            (*out)[static_cast<std::size_t>(match_col[col])] = col;
        }
    }
    return true;
}

// Shared peeling pass. Consumes rows/columns holding a single positive entry;
// singleton rows take the lowest free diagonal position from the bottom,
// singleton columns from the top, so everything left sits above the diagonal.
// Rows are preferred over columns, lowest index first.
struct PeelOutcome {
    bool consumed = false; // true iff exactly one positive diagonal
    Permutation row_perm;  // valid only when consumed
    Permutation col_perm;
};

PeelOutcome peel(const Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<char> row_active(n, 1), col_active(n, 1);
    std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) > 0.0) {
                ++row_count[i];
                ++col_count[j];
            }
        }
    }

    PeelOutcome result;
    result.row_perm.assign(n, 0);
    result.col_perm.assign(n, 0);
    std::size_t top = 0, bottom = n;

    for (std::size_t remaining = n; remaining > 0; --remaining) {
        // An empty active line means no positive diagonal at all.
        for (std::size_t i = 0; i < n; ++i) {
            if ((row_active[i] && row_count[i] == 0) ||
                (col_active[i] && col_count[i] == 0)) {
                return result;
            }
        }

        std::size_t row = n, col = n;
        bool from_row = false;
        for (std::size_t i = 0; i < n && row == n; ++i) {
            if (row_active[i] && row_count[i] == 1) row = i;
        }
        if (row != n) {
            from_row = true;
            for (std::size_t j = 0; j < n; ++j) {
                if (col_active[j] && m(row, j) > 0.0) {
                    col = j;
                    break;
                }
            }
        } else {
            for (std::size_t j = 0; j < n && col == n; ++j) {
                if (col_active[j] && col_count[j] == 1) col = j;
            }
            if (col == n) return result; // stalled: 0 or >= 2 diagonals
            for (std::size_t i = 0; i < n; ++i) {
                if (row_active[i] && m(i, col) > 0.0) {
                    row = i;
                    break;
                }
            }
        }

        const std::size_t pos = from_row ? --bottom : top++;
        result.row_perm[pos] = row;
        result.col_perm[pos] = col;

        row_active[row] = 0;
        col_active[col] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (col_active[j] && m(row, j) > 0.0) --col_count[j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (row_active[i] && m(i, col) > 0.0) --row_count[i];
        }
    }

    result.consumed = true;
    return result;
}

} // namespace

bool has_positive_diagonal(const Matrix& m) {
    require_square(m, "positive-diagonal test");
    return perfect_matching(
        m.rows(), [&](std::size_t i, std::size_t j) { return m(i, j) > 0.0; },
        nullptr);
}

std::optional<Permutation> find_positive_diagonal(const Matrix& m) {
    require_square(m, "positive-diagonal search");
    Permutation sigma;
    if (perfect_matching(
            m.rows(), [&](std::size_t i, std::size_t j) { return m(i, j) > 0.0; },
            &sigma)) {
        return sigma;
    }
    return std::nullopt;
}

std::uint64_t count_positive_diagonals(const Matrix& m, std::size_t cap) {
    require_square(m, "diagonal counting");
    const std::size_t n = m.rows();
    if (n > cap || n > kPermanentDimensionCap) {
        throw DomainError("diagonal counting is intractable beyond dimension " +
                          std::to_string(std::min(cap, kPermanentDimensionCap)));
    }

    std::vector<std::uint32_t> row_mask(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (m(i, j) > 0.0) row_mask[i] |= 1u << j;
        }
    }

    // Ryser: perm = sum over column subsets S of (-1)^(n-|S|) prod_i |row_i & S|.
    // Row sums are <= 20, so products fit comfortably in 128 bits.
    __int128 total = 0;
    const std::uint32_t full = (1u << n) - 1u;
    for (std::uint32_t subset = 1; subset <= full; ++subset) {
        __int128 prod = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const auto rs = std::popcount(row_mask[i] & subset);
            if (rs == 0) {
                prod = 0;
                break;
            }
            prod *= rs;
        }
        if (prod == 0) continue;
        const bool odd = ((n - static_cast<std::size_t>(std::popcount(subset))) & 1u) != 0;
        total += odd ? -prod : prod;
    }
    return static_cast<std::uint64_t>(total);
}

bool has_exactly_one_positive_diagonal(const Matrix& m) {
    require_square(m, "exactly-one-diagonal test");
    return peel(m).consumed;
}

std::optional<TriangularizationWitness> triangularize(const Matrix& m) {
    require_square(m, "triangularization");
    PeelOutcome outcome = peel(m);
    if (!outcome.consumed) return std::nullopt;
    return TriangularizationWitness{std::move(outcome.row_perm),
                                    std::move(outcome.col_perm)};
}

bool diagonal_support_entry(const Matrix& m, std::size_t i, std::size_t j) {
    require_square(m, "diagonal-support query");
    const std::size_t n = m.rows();
    if (i >= n || j >= n) throw DimensionError("entry index out of range");
    if (!(m(i, j) > 0.0)) {
        throw InvalidValueError("diagonal support is defined for positive entries only");
    }
    if (n == 1) return true;
    // (i, j) lies on a diagonal iff the minor without row i / column j has one.
    auto adj = [&](std::size_t r, std::size_t c) {
        const std::size_t rr = r < i ? r : r + 1;
        const std::size_t cc = c < j ? c : c + 1;
        return m(rr, cc) > 0.0;
    };
    return perfect_matching(n - 1, adj, nullptr);
}

bool is_upper_triangular_with_positive_diagonal(const Matrix& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!(m(i, i) > 0.0)) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (m(i, j) != 0.0) return false;
        }
    }
    return true;
}

} // namespace coopinf
