#pragma once

#include <stdexcept>
#include <string>

namespace sympent {

// Bad arguments to an operation (unknown id, negative epsilon, ...).
struct input_error : std::invalid_argument {
	explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A domain object violates its own invariants (d^2 != 0, action increase, ...).
struct validation_error : std::runtime_error {
	explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A schedule or estimator configuration cannot produce a meaningful answer.
struct config_error : std::runtime_error {
	explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampled function fails a non-degeneracy requirement at the given location.
struct degeneracy_error : std::runtime_error {
	explicit degeneracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two curves are parallel; an intersection count is undefined.
struct parallel_error : std::runtime_error {
	explicit parallel_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sympent
