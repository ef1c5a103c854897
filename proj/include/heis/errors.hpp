#ifndef HEIS_ERRORS_HPP
#define HEIS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace heis {

/// Thrown when an operation's stated hypotheses do not hold. `clause` names
/// the violated condition (e.g. "(3) rmin U_i > 2 rmax U_{i-1}").
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string clause, const std::string& detail)
      : std::runtime_error("hypothesis violated: " + clause + ": " + detail),
        clause_(std::move(clause)) {}

  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Thrown when a computation would exceed the configured resource cap.
/// Results are never silently truncated.
class ResourceCapError : public std::runtime_error {
 public:
  ResourceCapError(std::uint64_t predicted, std::uint64_t cap)
      : std::runtime_error("resource cap exceeded: predicted " + std::to_string(predicted) +
                           " > cap " + std::to_string(cap)),
        predicted_(predicted),
        cap_(cap) {}

  std::uint64_t predicted() const noexcept { return predicted_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t predicted_;
  std::uint64_t cap_;
};

inline constexpr std::uint64_t kDefaultCap = 100'000'000;

}  // namespace heis

#endif  // HEIS_ERRORS_HPP
