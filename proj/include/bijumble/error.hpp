#pragma once

#include <stdexcept>
#include <string>

namespace bijumble
{
    /// Base of every error the toolkit throws.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    class ParseError : public Error
    {
        public:
            ParseError(std::size_t line, const std::string & what) :
                Error("line " + std::to_string(line) + ": " + what),
                _line(line)
            {
            }

            auto line() const -> std::size_t { return _line; }

        private:
            std::size_t _line;
    };

    class ParameterError : public Error
    {
        public:
            using Error::Error;
    };

    class RangeError : public Error
    {
        public:
            using Error::Error;
    };

    /// Thrown when an exact method would exceed its enumeration limit.
    class CapacityError : public Error
    {
        public:
            CapacityError(const std::string & what, std::size_t limit) :
                Error(what + " (limit " + std::to_string(limit) + ")"),
                _limit(limit)
            {
            }

            auto limit() const -> std::size_t { return _limit; }

        private:
            std::size_t _limit;
    };

    class InvariantError : public Error
    {
        public:
            using Error::Error;
    };

    /// An iterative method hit its iteration cap; carries the last estimate.
    class ConvergenceError : public Error
    {
        public:
            ConvergenceError(const std::string & what, double last_estimate) :
                Error(what),
                _last_estimate(last_estimate)
            {
            }

            auto last_estimate() const -> double { return _last_estimate; }

        private:
            double _last_estimate;
    };

    class IoError : public Error
    {
        public:
            using Error::Error;
    };
}
