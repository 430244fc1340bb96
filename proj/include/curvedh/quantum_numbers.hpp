#pragma once

#include <sstream>

#include "errors.hpp"

namespace curvedh {

/// Principal, orbital and radial quantum numbers with n = l + m + 1.
class QuantumNumbers {
public:
    constexpr QuantumNumbers() = default;

    /// (n, l) with the radial number derived.
    QuantumNumbers(int n, int l) : QuantumNumbers(n, l, n - l - 1) {}

    QuantumNumbers(int n, int l, int m) : n_(n), l_(l), m_(m)
    {
        if (n < 1 || l < 0 || m < 0 || n != l + m + 1) {
            std::ostringstream os;
            os << "inconsistent quantum numbers (n=" << n << ", l=" << l << ", m=" << m
               << "): need n >= 1, 0 <= l <= n-1, n = l + m + 1";
            throw domain_error(os.str());
        }
    }

    constexpr int n() const { return n_; }
    constexpr int l() const { return l_; }
    constexpr int m() const { return m_; }

    friend constexpr bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

private:
    int n_ = 1;
    int l_ = 0;
    int m_ = 0;
};

} // namespace curvedh
