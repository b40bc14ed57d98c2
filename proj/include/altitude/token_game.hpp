#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "altitude/error.hpp"
#include "json.hpp"

namespace altitude {

struct Token {
  int height = 0;  // >= 1
  int id = 0;
};

// Array of columns with rows indexed from 1. A token is grounded when every
// cell below it in its column holds a token, i.e. it sits in the gap-free
// prefix starting at row 1.
class TokenBoard {
 public:
  TokenBoard() = default;
  explicit TokenBoard(int columns);
  // Column c gets tokens at the listed heights; ids are assigned in column
  // order, then height order.
  static TokenBoard from_heights(const std::vector<std::vector<int>>& heights);

  int column_count() const { return static_cast<int>(columns_.size()); }
  int active_column() const { return active_; }
  void set_active_column(int c);

  // Tokens of column c sorted by increasing height.
  const std::vector<Token>& column(int c) const { return columns_.at(c); }
  int token_count(int c) const { return static_cast<int>(column(c).size()); }
  int total_tokens() const;
  int grounded_count(int c) const;
  bool has_ungrounded() const;
  std::optional<int> token_at(int c, int h) const;
  bool occupied(int c, int h) const { return token_at(c, h).has_value(); }

  // Adds a token during setup. Throws InvalidInput if the cell is taken.
  void place(int c, int h, int id);

  bool pair_used(int a, int b) const;
  int transfer_count() const { return transfers_; }
  // Forget which column pairs have exchanged tokens (start of a new game).
  void clear_history();

  // Occupied heights per column.
  std::vector<std::vector<int>> occupancy() const;

 private:
  friend struct BoardAccess;

  std::vector<std::vector<Token>> columns_;
  int active_ = 0;
  std::vector<char> used_pairs_;
  int transfers_ = 0;
};

struct Pass {
  friend bool operator==(const Pass&, const Pass&) = default;
};
// Highest grounded token of the active column moves to another column.
struct Transfer {
  int to_column = 0;
  int to_height = 0;
  friend bool operator==(const Transfer&, const Transfer&) = default;
};
// Highest grounded token moves within the active column. Once it leaves its
// cell the only empty cell at or below it is that same cell, so this is
// legal only as a no-op.
struct InColumnDrop {
  int to_height = 0;
  friend bool operator==(const InColumnDrop&, const InColumnDrop&) = default;
};
using GameMove = std::variant<Pass, Transfer, InColumnDrop>;

std::string describe(const GameMove& move);

enum class Rule {
  no_grounded_token,
  column_out_of_range,
  target_out_of_range,
  target_above_source,
  target_occupied,
  pair_reused,
};

std::string rule_name(Rule rule);

class RuleViolation : public InvalidInput {
 public:
  RuleViolation(Rule rule, const std::string& detail)
      : InvalidInput(rule_name(rule) + ": " + detail), rule_(rule) {}
  Rule rule() const { return rule_; }

 private:
  Rule rule_;
};

struct TokenMotion {
  int id = 0;
  int from_column = 0;
  int from_height = 0;
  int to_column = 0;
  int to_height = 0;
  friend bool operator==(const TokenMotion&, const TokenMotion&) = default;
};

struct StepRecord {
  int active_column = 0;
  GameMove move;
  std::vector<TokenMotion> motions;  // board diff
};

// One game step in place: the optional move, then every ungrounded token of
// the active column falls one cell, then the active column advances
// cyclically. Throws RuleViolation and leaves the board untouched when the
// move is illegal.
StepRecord step(TokenBoard& board, const GameMove& move);
TokenBoard apply_step(TokenBoard board, const GameMove& move);

// Initial board plus the per-step diffs. Intermediate boards are rebuilt by
// replaying diffs.
struct GameTranscript {
  TokenBoard initial;
  std::vector<StepRecord> steps;
  TokenBoard final_board;

  int step_count() const { return static_cast<int>(steps.size()); }
  TokenBoard board_at(int k) const;  // board after k steps
  int transfer_count() const;
  int total_tokens() const { return initial.total_tokens(); }
  // Sub-game on boards k..l (steps k..l-1), with a fresh transfer history.
  GameTranscript slice(int k, int l) const;
};

// final count minus initial count, per column.
std::vector<int> column_gains(const GameTranscript& t);

// Empty string when every step follows from its predecessor by one legal
// step, tokens are conserved, no token height ever increases and no column
// pair transfers twice. With s_limit, also checks the (n, s) start condition.
std::string validate_transcript(const GameTranscript& t, std::optional<int> s_limit = {});

// Returns the next move, or nullopt to end the game.
using MoveSource = std::function<std::optional<GameMove>(const TokenBoard&)>;

struct PlayOptions {
  std::int64_t max_steps = 10'000'000;
  std::optional<int> per_column_limit;  // request the (n, s) contract
};

// Throws InvalidInput("step k: ...") when the source emits an illegal move.
GameTranscript play(TokenBoard initial, const MoveSource& source, const PlayOptions& options = {});

MoveSource all_pass(std::int64_t steps);

// Random legal play: each step with a grounded token transfers with
// probability transfer_probability to a random unused partner column and
// random empty height, otherwise passes.
MoveSource random_strategy(std::uint64_t seed, std::int64_t steps, double transfer_probability = 0.3);

// Up to s tokens per column at random distinct heights in 1..max_height.
TokenBoard random_board(int n, int s, int max_height, std::uint64_t seed);

struct TriangularGame {
  int n = 0;
  int s = 0;
  int k = 0;  // max { k : s * C(k+1, 2) <= n }
  std::vector<std::vector<int>> blocks;  // blocks[j-1][i-1] = column u_{j,i}
  std::vector<int> float_height;         // starting height of floaters per block
  int final_column = 0;
  int final_count = 0;
  GameTranscript transcript;
};

int triangular_block_count(int n, int s);

// Triangular construction: block M_j of s*j columns ends with i grounded
// tokens in its i-th column; tokens of M_{j-1} are peeled into M_j, so the
// last column of M_k collects s*k tokens.
TriangularGame triangular_strategy(int n, int s);

// floor(2 lg n), enough so that 2^l >= C(n, 2).
int transfer_budget_log(int n);
// 1 + 2 l ceil(sqrt(2m))
long long column_gain_bound(long long m, int l);
std::int64_t ceil_sqrt(std::int64_t x);

struct SubgameExtraction {
  int first_board = 0;  // sub-game spans boards first..last of the input
  int last_board = 0;
  int split_board = 0;  // j: both halves hold at most 2^(l-1) transfers
  int l = 0;
  int witness_column = 0;
  int witness_initial = 0;  // <= a'
  int witness_final = 0;    // >= b'
  long long b_prime = 0;    // b - a - r + 1
  int transfers = 0;        // in the sub-game, <= 2^(l-1)
  GameTranscript subgame;
};

// Halving step behind the net-gain bound. Needs 2m < (a'+1) r, at least r
// tokens that end in `column` after having been elsewhere, and l >= 1 with at
// most 2^l transfers (l defaults to the smallest such value). A transcript
// without transfers yields the whole game with zero gain for `column`.
SubgameExtraction extract_subgame(const GameTranscript& t, int column, int a_prime, int r,
                                  std::optional<int> l = {});

nlohmann::json transcript_to_json(const GameTranscript& t);
GameTranscript transcript_from_json(const nlohmann::json& doc);

}  // namespace altitude
