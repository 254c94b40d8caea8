#pragma once

#include <stdexcept>
#include <string>

namespace lfc {

/// A mathematical precondition failed: constant map, pole, branch cut,
/// composition outside the disk, non-equivalent weights.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace lfc
