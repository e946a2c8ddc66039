#ifndef EQPSG_ERRORS_HPP
#define EQPSG_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqpsg {

/// Root of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial, family file or formula text. `position` is a 0-based
/// byte offset into the input (or line number for family files, see message).
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A generator evaluated outside N^m \ {0}; n is below the family's valid range.
class non_positive_generator : public error {
public:
    non_positive_generator(std::int64_t n, std::size_t index)
        : error("generator " + std::to_string(index + 1) + " is not a nonzero vector in N^m at n = "
                + std::to_string(n)),
          n_(n), index_(index) {}
    std::int64_t n() const noexcept { return n_; }
    std::size_t index() const noexcept { return index_; }

private:
    std::int64_t n_;
    std::size_t index_;
};

/// A generator coordinate does not fit in 64 bits; the combinatorial
/// algorithms cannot represent such a semigroup.
class generator_overflow : public error {
public:
    using error::error;
};

class not_numerical : public error {
public:
    explicit not_numerical(std::int64_t gcd)
        : error("semigroup is not numerical (gcd = " + std::to_string(gcd) + ")") {}
};

class not_member : public error {
public:
    using error::error;
};

class index_out_of_range : public error {
public:
    using error::error;
};

/// A computation would exceed a configured resource cap.
class resource_limit : public error {
public:
    using error::error;
};

class empty_complex : public error {
public:
    empty_complex() : error("reduced homology of the void complex is undefined") {}
};

class missing_cap : public error {
public:
    missing_cap() : error("coarse Betti numbers in dimension m > 1 need an explicit degree cap") {}
};

class odd_degree : public error {
public:
    explicit odd_degree(std::int64_t d) : error("degree d = " + std::to_string(d) + " must be even and >= 2") {}
};

class insufficient_data : public error {
public:
    using error::error;
};

class below_onset : public error {
public:
    using error::error;
};

class unbound_variable : public error {
public:
    explicit unbound_variable(const std::string& name) : error("unbound variable '" + name + "'") {}
};

class quantified_parameter : public parse_error {
public:
    explicit quantified_parameter(std::size_t position)
        : parse_error("the parameter n cannot be quantified", position) {}
};

class unknown_builtin : public error {
public:
    explicit unknown_builtin(const std::string& name) : error("unknown builtin formula '" + name + "'") {}
};

class verification_failure : public error {
public:
    using error::error;
};

class bound_violation : public error {
public:
    using error::error;
};

class usage_error : public error {
public:
    using error::error;
};

} // namespace eqpsg

#endif // EQPSG_ERRORS_HPP
