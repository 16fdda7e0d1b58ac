#ifndef TOPNET_ERRORS_HPP
#define TOPNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace topnet {

/** Invalid inputs: dimension mismatches, bad parameter ranges, malformed configs. */
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * A numerical certificate could not be established: shell-width search
 * exhausted its iteration budget, rejection sampling degenerated, or a
 * geometric validity check failed.
 */
class certification_error : public std::runtime_error {
public:
    explicit certification_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace topnet

#endif  // TOPNET_ERRORS_HPP
