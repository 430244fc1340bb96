#pragma once

#include <stdexcept>
#include <string>

namespace curvedh {

/// Argument outside the domain of a curved-space function (r < 0, beyond the antipode, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation at a zero of the denominator of a curved tangent/cotangent or potential.
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Hypergeometric/Laguerre parameters that make a finite sum divide by zero.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// No hypergeometric branch yields a normalizable polynomial solution.
class branch_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complex wavefunction evaluation left an imaginary residue after phase removal.
class phase_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested level is not a bound state for the given curvature.
class unbound_level_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace curvedh
