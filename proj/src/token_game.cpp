#include "altitude/token_game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "altitude/rng.hpp"

namespace altitude {

namespace {

std::size_t pair_index(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  return static_cast<std::size_t>(a) * n + b;
}

}  // namespace

struct BoardAccess {
  static std::vector<Token>& column(TokenBoard& b, int c) { return b.columns_.at(c); }

  static Token take(TokenBoard& b, int c, int h) {
    auto& col = b.columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), h, [](const Token& t, int x) { return t.height < x; });
    ALTITUDE_CHECK(it != col.end() && it->height == h, "no token at the expected cell");
    Token t = *it;
    col.erase(it);
    return t;
  }

  static void put(TokenBoard& b, int c, Token t) {
    auto& col = b.columns_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), t.height, [](const Token& x, int h) { return x.height < h; });
    ALTITUDE_CHECK(it == col.end() || it->height != t.height, "two tokens in one cell");
    col.insert(it, t);
  }

  static void mark_pair(TokenBoard& b, int u, int v) {
    b.used_pairs_[pair_index(u, v, b.column_count())] = 1;
    ++b.transfers_;
  }

  // Replays a recorded diff without re-checking the rules.
  static void replay(TokenBoard& b, const StepRecord& rec) {
    for (const auto& mo : rec.motions) {
      Token t = take(b, mo.from_column, mo.from_height);
      ALTITUDE_CHECK(t.id == mo.id, "diff names the wrong token");
      t.height = mo.to_height;
      put(b, mo.to_column, t);
      if (mo.to_column != mo.from_column) mark_pair(b, mo.from_column, mo.to_column);
    }
    b.active_ = (rec.active_column + 1) % b.column_count();
  }
};

TokenBoard::TokenBoard(int columns) {
  if (columns < 1) throw InvalidInput("a token board needs at least one column");
  columns_.resize(columns);
  used_pairs_.assign(static_cast<std::size_t>(columns) * columns, 0);
}

TokenBoard TokenBoard::from_heights(const std::vector<std::vector<int>>& heights) {
  TokenBoard b(static_cast<int>(heights.size()));
  int id = 0;
  for (int c = 0; c < b.column_count(); ++c) {
    auto hs = heights[c];
    std::sort(hs.begin(), hs.end());
    for (int h : hs) b.place(c, h, id++);
  }
  return b;
}

void TokenBoard::set_active_column(int c) {
  if (c < 0 || c >= column_count()) throw InvalidInput("active column out of range");
  active_ = c;
}

int TokenBoard::total_tokens() const {
  int total = 0;
  for (const auto& col : columns_) total += static_cast<int>(col.size());
  return total;
}

int TokenBoard::grounded_count(int c) const {
  const auto& col = column(c);
  int g = 0;
  while (g < static_cast<int>(col.size()) && col[g].height == g + 1) ++g;
  return g;
}

bool TokenBoard::has_ungrounded() const {
  for (int c = 0; c < column_count(); ++c) {
    if (grounded_count(c) != token_count(c)) return true;
  }
  return false;
}

std::optional<int> TokenBoard::token_at(int c, int h) const {
  if (c < 0 || c >= column_count()) return std::nullopt;
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), h, [](const Token& t, int x) { return t.height < x; });
  if (it != col.end() && it->height == h) return it->id;
  return std::nullopt;
}

void TokenBoard::place(int c, int h, int id) {
  if (c < 0 || c >= column_count()) throw InvalidInput("column out of range");
  if (h < 1) throw InvalidInput("token heights start at 1");
  if (occupied(c, h)) throw InvalidInput("cell already holds a token");
  BoardAccess::put(*this, c, Token{h, id});
}

bool TokenBoard::pair_used(int a, int b) const { return used_pairs_.at(pair_index(a, b, column_count())) != 0; }

void TokenBoard::clear_history() {
  std::fill(used_pairs_.begin(), used_pairs_.end(), 0);
  transfers_ = 0;
}

std::vector<std::vector<int>> TokenBoard::occupancy() const {
  std::vector<std::vector<int>> out(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& t : columns_[c]) out[c].push_back(t.height);
  return out;
}

std::string describe(const GameMove& move) {
  if (std::holds_alternative<Pass>(move)) return "pass";
  if (const auto* t = std::get_if<Transfer>(&move)) {
    return "transfer to column " + std::to_string(t->to_column) + " height " + std::to_string(t->to_height);
  }
  return "in-column drop to height " + std::to_string(std::get<InColumnDrop>(move).to_height);
}

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::no_grounded_token: return "active column has no grounded token";
    case Rule::column_out_of_range: return "target column out of range";
    case Rule::target_out_of_range: return "target height out of range";
    case Rule::target_above_source: return "target above the moved token";
    case Rule::target_occupied: return "target cell occupied";
    case Rule::pair_reused: return "column pair already used for a transfer";
  }
  return "unknown rule";
}

StepRecord step(TokenBoard& board, const GameMove& move) {
  const int u = board.active_column();
  StepRecord rec;
  rec.active_column = u;
  rec.move = move;

  if (!std::holds_alternative<Pass>(move)) {
    const int g = board.grounded_count(u);
    if (g == 0) throw RuleViolation(Rule::no_grounded_token, "column " + std::to_string(u));
    int v = u;
    int h = 0;
    if (const auto* t = std::get_if<Transfer>(&move)) {
      v = t->to_column;
      h = t->to_height;
      if (v < 0 || v >= board.column_count() || v == u) {
        throw RuleViolation(Rule::column_out_of_range, "column " + std::to_string(v));
      }
    } else {
      h = std::get<InColumnDrop>(move).to_height;
    }
    if (h < 1) throw RuleViolation(Rule::target_out_of_range, "height " + std::to_string(h));
    if (h > g) {
      throw RuleViolation(Rule::target_above_source,
                          "height " + std::to_string(h) + " above source height " + std::to_string(g));
    }
    if (v == u) {
      if (h != g) throw RuleViolation(Rule::target_occupied, "cell " + std::to_string(h) + " of column " + std::to_string(u));
    } else {
      if (board.occupied(v, h)) {
        throw RuleViolation(Rule::target_occupied, "cell " + std::to_string(h) + " of column " + std::to_string(v));
      }
      if (board.pair_used(u, v)) {
        throw RuleViolation(Rule::pair_reused, "columns " + std::to_string(u) + " and " + std::to_string(v));
      }
      Token t = BoardAccess::take(board, u, g);
      rec.motions.push_back({t.id, u, g, v, h});
      t.height = h;
      BoardAccess::put(board, v, t);
      BoardAccess::mark_pair(board, u, v);
    }
  }

  auto& col = BoardAccess::column(board, u);
  const int g = board.grounded_count(u);
  for (std::size_t i = g; i < col.size(); ++i) {
    rec.motions.push_back({col[i].id, u, col[i].height, u, col[i].height - 1});
    --col[i].height;
  }
  board.set_active_column((u + 1) % board.column_count());
  return rec;
}

TokenBoard apply_step(TokenBoard board, const GameMove& move) {
  step(board, move);
  return board;
}

TokenBoard GameTranscript::board_at(int k) const {
  if (k < 0 || k > step_count()) throw InvalidInput("board index out of range");
  TokenBoard b = initial;
  for (int i = 0; i < k; ++i) BoardAccess::replay(b, steps[i]);
  return b;
}

int GameTranscript::transfer_count() const {
  int count = 0;
  for (const auto& s : steps) count += std::holds_alternative<Transfer>(s.move) ? 1 : 0;
  return count;
}

GameTranscript GameTranscript::slice(int k, int l) const {
  if (k < 0 || l < k || l > step_count()) throw InvalidInput("slice bounds out of range");
  GameTranscript out;
  out.initial = board_at(k);
  out.initial.clear_history();
  out.steps.assign(steps.begin() + k, steps.begin() + l);
  out.final_board = out.initial;
  for (const auto& s : out.steps) BoardAccess::replay(out.final_board, s);
  return out;
}

std::vector<int> column_gains(const GameTranscript& t) {
  std::vector<int> gains(t.initial.column_count());
  for (int c = 0; c < t.initial.column_count(); ++c) gains[c] = t.final_board.token_count(c) - t.initial.token_count(c);
  return gains;
}

std::string validate_transcript(const GameTranscript& t, std::optional<int> s_limit) {
  const int n = t.initial.column_count();
  if (n < 1) return "board has no columns";
  if (s_limit) {
    for (int c = 0; c < n; ++c) {
      if (t.initial.token_count(c) > *s_limit) {
        return "column " + std::to_string(c) + " starts with more than " + std::to_string(*s_limit) + " tokens";
      }
    }
  }
  TokenBoard b = t.initial;
  const int total = b.total_tokens();
  for (int k = 0; k < t.step_count(); ++k) {
    const auto& rec = t.steps[k];
    const std::string at = "step " + std::to_string(k) + ": ";
    if (rec.active_column != b.active_column()) return at + "active column out of sequence";
    StepRecord redo;
    try {
      redo = step(b, rec.move);
    } catch (const RuleViolation& e) {
      return at + e.what();
    }
    if (redo.motions != rec.motions) return at + "recorded diff does not match the step";
    for (const auto& mo : rec.motions) {
      if (mo.to_height > mo.from_height) return at + "token height increased";
    }
    if (b.total_tokens() != total) return at + "token count changed";
  }
  if (b.occupancy() != t.final_board.occupancy()) return "final board does not match the replay";
  return "";
}

GameTranscript play(TokenBoard initial, const MoveSource& source, const PlayOptions& options) {
  if (options.per_column_limit) {
    for (int c = 0; c < initial.column_count(); ++c) {
      if (initial.token_count(c) > *options.per_column_limit) {
        throw InvalidInput("column " + std::to_string(c) + " starts with more than " +
                           std::to_string(*options.per_column_limit) + " tokens");
      }
    }
  }
  GameTranscript t;
  t.initial = initial;
  TokenBoard board = std::move(initial);
  for (std::int64_t k = 0;; ++k) {
    auto move = source(board);
    if (!move) break;
    if (k >= options.max_steps) throw InvalidInput("game exceeded the step limit");
    try {
      t.steps.push_back(step(board, *move));
    } catch (const RuleViolation& e) {
      throw InvalidInput("step " + std::to_string(k) + ": " + e.what());
    }
  }
  t.final_board = std::move(board);
  return t;
}

MoveSource all_pass(std::int64_t steps) {
  auto left = std::make_shared<std::int64_t>(steps);
  return [left](const TokenBoard&) -> std::optional<GameMove> {
    if (*left <= 0) return std::nullopt;
    --*left;
    return Pass{};
  };
}

MoveSource random_strategy(std::uint64_t seed, std::int64_t steps, double transfer_probability) {
  auto rng = std::make_shared<Rng>(seed);
  auto left = std::make_shared<std::int64_t>(steps);
  return [rng, left, transfer_probability](const TokenBoard& b) -> std::optional<GameMove> {
    if (*left <= 0) return std::nullopt;
    --*left;
    const int u = b.active_column();
    const int g = b.grounded_count(u);
    if (g == 0 || !rng->bernoulli(transfer_probability)) return Pass{};
    std::vector<int> partners;
    for (int v = 0; v < b.column_count(); ++v)
      if (v != u && !b.pair_used(u, v)) partners.push_back(v);
    if (partners.empty()) return Pass{};
    const int v = partners[rng->below(partners.size())];
    std::vector<int> free;
    for (int h = 1; h <= g; ++h)
      if (!b.occupied(v, h)) free.push_back(h);
    if (free.empty()) return Pass{};
    return Transfer{v, free[rng->below(free.size())]};
  };
}

TokenBoard random_board(int n, int s, int max_height, std::uint64_t seed) {
  if (max_height < s) throw InvalidInput("max_height must be at least s");
  Rng rng(seed);
  std::vector<std::vector<int>> heights(n);
  std::vector<int> pool(max_height);
  std::iota(pool.begin(), pool.end(), 1);
  for (int c = 0; c < n; ++c) {
    const int count = rng.uniform_int(0, s);
    rng.shuffle(std::span<int>(pool));
    heights[c].assign(pool.begin(), pool.begin() + count);
  }
  return TokenBoard::from_heights(heights);
}

int triangular_block_count(int n, int s) {
  int k = 0;
  while (static_cast<long long>(s) * (k + 1) * (k + 2) / 2 <= n) ++k;
  return k;
}

TriangularGame triangular_strategy(int n, int s) {
  if (s < 1) throw InvalidInput("s must be positive");
  if (n < s) throw InvalidInput("triangular strategy needs n >= s");
  TriangularGame game;
  game.n = n;
  game.s = s;
  game.k = triangular_block_count(n, s);
  const int k = game.k;

  int next = 0;
  for (int j = 1; j <= k; ++j) {
    std::vector<int> block(s * j);
    for (auto& c : block) c = next++;
    game.blocks.push_back(std::move(block));
  }

  // Floaters of M_j start high enough to stay clear of the stacks built in
  // M_j until M_{j-1} has settled and been peeled: M_{j-1} settles within
  // H_{j-1} cycles, the peeling of s(j-1) rounds takes one cycle per round,
  // and the stacks reach height s(j-1).
  game.float_height.assign(k, 0);
  for (int j = 2; j <= k; ++j) game.float_height[j - 1] = game.float_height[j - 2] + 2 * s * (j - 1) + 3;

  std::vector<std::vector<int>> heights(n);
  for (int i = 1; i <= s; ++i)
    for (int h = 1; h <= i; ++h) heights[game.blocks[0][i - 1]].push_back(h);
  for (int j = 2; j <= k; ++j) {
    for (int i = 1; i <= s * j; ++i) {
      for (int f = 0; f < std::min(i, s); ++f) heights[game.blocks[j - 1][i - 1]].push_back(game.float_height[j - 1] + f);
    }
  }
  TokenBoard initial = TokenBoard::from_heights(heights);

  // Peeling plan: round r of block j moves the top token of u_{j-1,r..s(j-1)}
  // (in that order) onto u_{j, sj-r+1}, stacking at heights 1, 2, ...
  struct Planned {
    int source;
    int target;
    int height;  // source top height == target landing height
  };
  std::vector<Planned> plan;
  for (int j = 2; j <= k; ++j) {
    const auto& prev = game.blocks[j - 2];
    const auto& cur = game.blocks[j - 1];
    const int width = s * (j - 1);
    for (int r = 1; r <= width; ++r) {
      const int target = cur[s * j - r];
      for (int i = r; i <= width; ++i) plan.push_back({prev[i - 1], target, i - r + 1});
    }
  }

  std::size_t cursor = 0;
  const MoveSource source = [&](const TokenBoard& b) -> std::optional<GameMove> {
    if (cursor == plan.size()) {
      if (b.active_column() == 0 && !b.has_ungrounded()) return std::nullopt;
      return Pass{};
    }
    const auto& p = plan[cursor];
    if (b.active_column() != p.source) return Pass{};
    const bool source_ready = b.grounded_count(p.source) == p.height && b.token_count(p.source) == p.height;
    const bool target_ready = b.grounded_count(p.target) == p.height - 1 && !b.occupied(p.target, p.height);
    if (!source_ready || !target_ready) return Pass{};
    ++cursor;
    return Transfer{p.target, p.height};
  };

  PlayOptions options;
  options.per_column_limit = s;
  const int top = k >= 1 ? game.float_height[k - 1] + s : s;
  options.max_steps = static_cast<std::int64_t>(n) * (2 * top + 4 * static_cast<std::int64_t>(plan.size()) + 16);
  game.transcript = play(std::move(initial), source, options);
  ALTITUDE_CHECK(cursor == plan.size(), "triangular plan did not complete");

  game.final_column = game.blocks.back().back();
  game.final_count = game.transcript.final_board.token_count(game.final_column);
  return game;
}

int transfer_budget_log(int n) {
  if (n < 1) return 0;
  const auto sq = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  return static_cast<int>(std::bit_width(sq)) - 1;
}

std::int64_t ceil_sqrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r < x) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  return r;
}

long long column_gain_bound(long long m, int l) {
  if (m < 0 || l < 0) throw InvalidInput("column_gain_bound needs m >= 0 and l >= 0");
  return 1 + 2LL * l * ceil_sqrt(2 * m);
}

SubgameExtraction extract_subgame(const GameTranscript& t, int column, int a_prime, int r, std::optional<int> l) {
  const int n = t.initial.column_count();
  if (column < 0 || column >= n) throw InvalidInput("column out of range");
  const int transfers = t.transfer_count();
  const long long m = t.total_tokens();

  SubgameExtraction out;
  if (transfers == 0) {
    out.first_board = 0;
    out.last_board = t.step_count();
    out.split_board = t.step_count();
    out.witness_column = column;
    out.witness_initial = t.initial.token_count(column);
    out.witness_final = t.final_board.token_count(column);
    out.subgame = t;
    return out;
  }

  if (r < 1 || a_prime < 0) throw InvalidInput("need r >= 1 and a' >= 0");
  if (!(2 * m < static_cast<long long>(a_prime + 1) * r)) throw InvalidInput("precondition m < (a'+1) r / 2 fails");
  int ell = 1;
  while ((1LL << ell) < transfers) ++ell;
  if (l) {
    if (*l < 1 || (*l < 62 && (1LL << *l) < transfers)) throw InvalidInput("transcript has more than 2^l transfers");
    ell = *l;
  }
  out.l = ell;
  const long long half = ell >= 62 ? (1LL << 61) : (1LL << (ell - 1));

  // Split after the half-th transfer (or at the end when there are fewer).
  int split = t.step_count();
  {
    long long seen = 0;
    for (int k = 0; k < t.step_count(); ++k) {
      if (std::holds_alternative<Transfer>(t.steps[k].move) && ++seen == half) {
        split = k + 1;
        break;
      }
    }
  }
  out.split_board = split;

  // Track where each token has been, and its last transfer into `column`.
  std::map<int, bool> ever_left;
  std::map<int, int> last_entry_step;
  std::map<int, int> entry_source;
  for (int c = 0; c < n; ++c)
    for (const auto& tok : t.initial.column(c)) ever_left[tok.id] = c != column;
  for (int k = 0; k < t.step_count(); ++k) {
    for (const auto& mo : t.steps[k].motions) {
      if (mo.to_column != column) ever_left[mo.id] = true;
      if (mo.to_column == column && mo.from_column != column) {
        last_entry_step[mo.id] = k;
        entry_source[mo.id] = mo.from_column;
      }
    }
  }

  const auto& final_col = t.final_board.column(column);
  std::vector<Token> moved_in;  // R, highest first
  for (auto it = final_col.rbegin(); it != final_col.rend(); ++it)
    if (ever_left[it->id]) moved_in.push_back(*it);
  if (static_cast<int>(moved_in.size()) < r) {
    throw InvalidInput("fewer than r tokens end in the column after arriving from elsewhere");
  }
  const int a = t.initial.token_count(column);
  const int b = t.final_board.token_count(column);
  out.b_prime = static_cast<long long>(b) - a - r + 1;

  // R_0: the r highest of R. R_1: those whose entry step lies in the chosen
  // half, which must hold at least r/2 of them.
  std::vector<int> first_half, second_half;
  for (int i = 0; i < r; ++i) {
    const int id = moved_in[i].id;
    const int k = last_entry_step.at(id);
    (k + 1 <= split ? first_half : second_half).push_back(id);
  }
  const bool use_first = 2 * static_cast<int>(first_half.size()) >= r;
  const auto& r1 = use_first ? first_half : second_half;
  ALTITUDE_CHECK(2 * static_cast<int>(r1.size()) >= r, "neither half holds r/2 transfers of R_0");
  const int start = use_first ? 0 : split;

  const TokenBoard start_board = t.board_at(start);
  // Earliest-entering witness first keeps the sub-game short.
  std::vector<int> order(r1.begin(), r1.end());
  std::sort(order.begin(), order.end(), [&](int x, int y) { return last_entry_step.at(x) < last_entry_step.at(y); });
  for (int id : order) {
    const int v = entry_source.at(id);
    if (start_board.token_count(v) > a_prime) continue;
    const int k = last_entry_step.at(id);
    const TokenBoard at_entry = t.board_at(k);
    out.first_board = start;
    out.last_board = k;
    out.witness_column = v;
    out.witness_initial = start_board.token_count(v);
    out.witness_final = at_entry.token_count(v);
    out.subgame = t.slice(start, k);
    out.transfers = out.subgame.transfer_count();
    ALTITUDE_CHECK(out.witness_final >= out.b_prime, "witness column below b' at the transfer");
    ALTITUDE_CHECK(out.transfers <= half, "sub-game holds more than 2^(l-1) transfers");
    return out;
  }
  detail::fail_internal("no source column of R_1 starts the half with at most a' tokens");
}

namespace {

nlohmann::json move_json(const GameMove& move) {
  if (std::holds_alternative<Pass>(move)) return {{"type", "pass"}};
  if (const auto* t = std::get_if<Transfer>(&move)) {
    return {{"type", "transfer"}, {"to_column", t->to_column}, {"to_height", t->to_height}};
  }
  return {{"type", "drop"}, {"to_height", std::get<InColumnDrop>(move).to_height}};
}

GameMove move_from_json(const nlohmann::json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "pass") return Pass{};
  if (type == "transfer") return Transfer{j.at("to_column").get<int>(), j.at("to_height").get<int>()};
  if (type == "drop") return InColumnDrop{j.at("to_height").get<int>()};
  throw InvalidInput("unknown move type " + type);
}

}  // namespace

nlohmann::json transcript_to_json(const GameTranscript& t) {
  nlohmann::json doc;
  doc["columns"] = t.initial.column_count();
  doc["active"] = t.initial.active_column();
  auto tokens = nlohmann::json::array();
  for (int c = 0; c < t.initial.column_count(); ++c)
    for (const auto& tok : t.initial.column(c)) tokens.push_back({tok.id, c, tok.height});
  doc["tokens"] = std::move(tokens);
  auto steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    auto diff = nlohmann::json::array();
    for (const auto& mo : s.motions) diff.push_back({mo.id, mo.from_column, mo.from_height, mo.to_column, mo.to_height});
    steps.push_back({{"active", s.active_column}, {"move", move_json(s.move)}, {"diff", std::move(diff)}});
  }
  doc["steps"] = std::move(steps);
  return doc;
}

GameTranscript transcript_from_json(const nlohmann::json& doc) {
  try {
    GameTranscript t;
    t.initial = TokenBoard(doc.at("columns").get<int>());
    for (const auto& tok : doc.at("tokens")) t.initial.place(tok.at(1).get<int>(), tok.at(2).get<int>(), tok.at(0).get<int>());
    t.initial.set_active_column(doc.at("active").get<int>());
    t.final_board = t.initial;
    for (const auto& s : doc.at("steps")) {
      StepRecord rec;
      rec.active_column = s.at("active").get<int>();
      rec.move = move_from_json(s.at("move"));
      for (const auto& d : s.at("diff")) {
        rec.motions.push_back({d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>(), d.at(3).get<int>(),
                               d.at(4).get<int>()});
      }
      BoardAccess::replay(t.final_board, rec);
      t.steps.push_back(std::move(rec));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed transcript: ") + e.what());
  } catch (const InternalError& e) {
    throw InvalidInput(std::string("inconsistent transcript: ") + e.what());
  }
}

}  // namespace altitude
