#ifndef ARMASIN_ERRORS_HPP
#define ARMASIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace armasin {

/// Bad caller input: empty series, inverted band edges, out-of-range bin, ...
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numeric procedure could not produce a usable result (degenerate design,
/// singular regression, all order-selection cells failed, ...).
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& msg) : std::runtime_error(msg) {}
};

class design_failure : public computation_error {
public:
    explicit design_failure(const std::string& msg) : computation_error(msg) {}
};

class fit_failure : public computation_error {
public:
    explicit fit_failure(const std::string& msg) : computation_error(msg) {}
};

/// Frequency response requested exactly on a unit-circle pole.
class pole_on_circle : public computation_error {
public:
    explicit pole_on_circle(double w)
        : computation_error("frequency response has a pole on the unit circle at w=" +
                            std::to_string(w)),
          frequency(w) {}
    double frequency;
};

} // namespace armasin

#endif
