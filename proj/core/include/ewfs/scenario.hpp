#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewfs {

/// Data that fails a documented invariant (negative probability, unnormalized
/// context, signalling input handed to a membership test, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which input of each super-observer opens the friend's lab.
enum class FriendConvention {
  last,   // x = m - 1
  first,  // x = 0
};

/// Extended Wigner's friend scenario: `parties` super-observers, each with
/// `inputs` settings and a binary outcome, each paired with a friend whose
/// outcome ranges over {0, ..., friend_outputs - 1}.
///
/// Table layout used throughout: contexts (input tuples, first party most
/// significant) outermost; within a context, super-observer outcomes in
/// lexicographic order; for joint models the friend outcomes come last.
struct ScenarioSpec {
  int parties = 2;
  int inputs = 2;
  int friend_outputs = 2;
  std::vector<int> friend_inputs;

  static ScenarioSpec make(int parties, int inputs, FriendConvention convention = FriendConvention::last,
                           int friend_outputs = 2);
  static ScenarioSpec bipartite(int inputs, FriendConvention convention = FriendConvention::last,
                                int friend_outputs = 2) {
    return make(2, inputs, convention, friend_outputs);
  }

  /// Throws ValidationError when the invariants do not hold.
  void validate() const;

  std::size_t context_count() const;   // inputs^parties
  std::size_t outcome_count() const;   // 2^parties
  std::size_t friend_count() const;    // friend_outputs^parties
  std::size_t behavior_size() const { return context_count() * outcome_count(); }
  std::size_t joint_size() const { return behavior_size() * friend_count(); }

  std::vector<int> context_inputs(std::size_t context) const;
  std::size_t context_index(std::span<const int> inputs) const;
  int outcome_of(std::size_t outcome, int party) const {
    return static_cast<int>((outcome >> (parties - 1 - party)) & 1U);
  }
  int friend_outcome_of(std::size_t friends, int party) const;

  /// "first", "last" or a comma-separated index list.
  std::string convention_label() const;

  bool operator==(const ScenarioSpec&) const = default;
};

/// "a,b,x,y"-style label for an entry, e.g. "(1,0|2,0)".
std::string entry_label(const ScenarioSpec& s, std::size_t context, std::size_t outcome);
/// "(x,y)" label for a context.
std::string context_label(const ScenarioSpec& s, std::size_t context);

/// Parses "last", "first", or an explicit list like "2,2,1".
std::vector<int> parse_friend_inputs(const std::string& text, int parties, int inputs);

}  // namespace ewfs
