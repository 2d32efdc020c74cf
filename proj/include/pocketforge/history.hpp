#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pocketforge/error.hpp"

namespace pocketforge {

enum class Origin { typed, generated, restored };

inline std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::typed: return "typed";
    case Origin::generated: return "generated";
    case Origin::restored: return "restored";
  }
  return "typed";
}

/// Contents of the code editing panel and how they got there.
/// Only typed states may be empty.
struct EditorState {
  std::string source_text;
  Origin origin = Origin::typed;

  bool valid() const { return origin == Origin::typed || !source_text.empty(); }

  friend bool operator==(const EditorState&, const EditorState&) = default;
};

struct HistoryOptions {
  std::size_t capacity = 200;
  std::int64_t coalesce_window_ms = 300;
};

/// Snapshot-based undo/redo. Typed commits that arrive within the coalesce
/// window of the previous typed commit replace the present instead of
/// pushing it; generated and restored commits always get their own entry.
/// Committing text identical to the present is a no-op.
///
/// Invariants: neither past nor future holds two adjacent identical
/// texts, and past never exceeds the capacity (oldest entries drop first).
class HistoryStack {
 public:
  HistoryStack() = default;
  explicit HistoryStack(HistoryOptions options) : options_(options) {}

  void commit(EditorState state, std::int64_t now_ms) {
    if (!state.valid()) {
      throw ValidationError("only typed editor states may be empty");
    }
    if (!present_) {
      present_ = std::move(state);
      future_.clear();
      mark_commit(now_ms);
      return;
    }
    if (state.source_text == present_->source_text) return;

    const bool coalesce = coalescible_ && state.origin == Origin::typed &&
                          present_->origin == Origin::typed && now_ms >= last_commit_ms_ &&
                          now_ms - last_commit_ms_ <= options_.coalesce_window_ms;
    if (coalesce) {
      // Typing back to the previous snapshot folds into it.
      if (!past_.empty() && past_.back().source_text == state.source_text) past_.pop_back();
      present_ = std::move(state);
    } else {
      past_.push_back(std::move(*present_));
      present_ = std::move(state);
      enforce_capacity();
    }
    future_.clear();
    mark_commit(now_ms);
  }

  /// Steps back one snapshot. Returns nullopt, leaving the stack untouched,
  /// when there is nothing to undo.
  std::optional<EditorState> undo() {
    if (past_.empty()) return std::nullopt;
    future_.push_front(std::move(*present_));
    present_ = std::move(past_.back());
    past_.pop_back();
    coalescible_ = false;
    return present_;
  }

  std::optional<EditorState> redo() {
    if (future_.empty()) return std::nullopt;
    past_.push_back(std::move(*present_));
    present_ = std::move(future_.front());
    future_.pop_front();
    enforce_capacity();
    coalescible_ = false;
    return present_;
  }

  bool can_undo() const { return !past_.empty(); }
  bool can_redo() const { return !future_.empty(); }

  const std::optional<EditorState>& present() const { return present_; }
  // Oldest first.
  const std::deque<EditorState>& past() const { return past_; }
  // Next redo target first.
  const std::deque<EditorState>& future() const { return future_; }
  const HistoryOptions& options() const { return options_; }
  std::int64_t last_commit_ms() const { return last_commit_ms_; }

 private:
  void mark_commit(std::int64_t now_ms) {
    last_commit_ms_ = now_ms;
    coalescible_ = present_->origin == Origin::typed;
  }

  void enforce_capacity() {
    while (past_.size() > options_.capacity) past_.pop_front();
  }

  HistoryOptions options_;
  std::deque<EditorState> past_;
  std::optional<EditorState> present_;
  std::deque<EditorState> future_;
  std::int64_t last_commit_ms_ = 0;
  bool coalescible_ = false;
};

}  // namespace pocketforge
