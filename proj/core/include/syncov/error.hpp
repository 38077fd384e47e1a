#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace syncov {

/// Base for every failure caused by the data being processed (as opposed to
/// how the toolkit was invoked). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tree or file violates a structural invariant.
class StructureError : public DataError {
 public:
  using DataError::DataError;
};

/// Input could not be ingested: unknown label, misaligned files, bad token.
class IngestError : public DataError {
 public:
  using DataError::DataError;
};

/// A cache file is missing, truncated, or was written by another version.
class CacheError : public DataError {
 public:
  using DataError::DataError;
};

/// Bad configuration or command-line usage. Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's mathematical domain (empty polynomial,
/// zero vector under cosine, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The original tree-to-polynomial expansion exceeded its term budget.
class TermExplosion : public std::runtime_error {
 public:
  TermExplosion(int node_id, std::uint64_t terms, std::uint64_t budget)
      : std::runtime_error("term explosion at node " + std::to_string(node_id) + ": " +
                           std::to_string(terms) + " terms exceeds budget " +
                           std::to_string(budget)),
        node_id_(node_id),
        terms_(terms),
        budget_(budget) {}

  int node_id() const noexcept { return node_id_; }
  std::uint64_t terms() const noexcept { return terms_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  int node_id_;
  std::uint64_t terms_;
  std::uint64_t budget_;
};

}  // namespace syncov
