#pragma once

#include <stdexcept>
#include <string>

namespace k3corr {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Domain violations caused by bad input.  The CLI maps these to exit code 2. */
struct invalid_input : error {
    using error::error;
};

struct degenerate_lattice : invalid_input {
    using invalid_input::invalid_input;
};
struct odd_lattice : invalid_input {
    using invalid_input::invalid_input;
};
struct zero_vector : invalid_input {
    using invalid_input::invalid_input;
};
struct indefinite_lattice : invalid_input {
    using invalid_input::invalid_input;
};
struct isotropic_mirror : invalid_input {
    using invalid_input::invalid_input;
};
struct invalid_target : invalid_input {
    using invalid_input::invalid_input;
};
struct not_indefinite_nonsquare : invalid_input {
    using invalid_input::invalid_input;
};
struct not_coprime : invalid_input {
    using invalid_input::invalid_input;
};
struct illegal_move : invalid_input {
    using invalid_input::invalid_input;
};
struct not_rank_one : invalid_input {
    using invalid_input::invalid_input;
};
struct not_reduced : invalid_input {
    using invalid_input::invalid_input;
};
struct invalid_gamma : invalid_input {
    using invalid_input::invalid_input;
};
struct invalid_type : invalid_input {
    using invalid_input::invalid_input;
};
struct not_plus_minus_one : invalid_input {
    using invalid_input::invalid_input;
};
struct type_mismatch : invalid_input {
    using invalid_input::invalid_input;
};

/* Consistency failures that indicate a bug in this library, never bad input. */
struct internal_error : error {
    using error::error;
};
struct witness_verification_failed : internal_error {
    using internal_error::internal_error;
};

}  // namespace k3corr
