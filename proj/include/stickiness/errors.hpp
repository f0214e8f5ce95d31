#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stickiness
{

/// Input data violates a domain invariant (non-positive price, unordered dates, ...).
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A stock is missing a date that another stock in the panel has.
class AlignmentError : public ValidationError
{
public:
    AlignmentError(std::string stock, std::string date)
        : ValidationError("stock " + stock + " has no row for date " + date),
          stock_(std::move(stock)), date_(std::move(date))
    {
    }

    const std::string &stock() const noexcept { return stock_; }
    const std::string &date() const noexcept { return date_; }

private:
    std::string stock_;
    std::string date_;
};

/// Unknown ticker or other key.
class LookupError : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

/// Not enough data, zero variance, or an otherwise unusable input.
class DegenerateInputError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A rolling window with zero dispersion. `index()` is the window's last observation.
class DegenerateWindowError : public DegenerateInputError
{
public:
    explicit DegenerateWindowError(std::size_t index)
        : DegenerateInputError("degenerate rolling window ending at index " + std::to_string(index) +
                               " (zero dispersion)"),
          index_(index)
    {
    }

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Two objects that must share a layout (e.g. a threshold grid) do not.
class InterfaceError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// Invalid command-line or run configuration.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace stickiness
