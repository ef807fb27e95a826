#pragma once

#include <stdexcept>
#include <string>

namespace casfilm {

/// Fermi level at or below the lowest sub-band: no occupied states.
class band_edge_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The self-consistent width equation has no root in the search range.
class no_bound_state_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure exhausted its budget before reaching tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A guarded evaluation was requested outside its numerically safe domain.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace casfilm
