// Core LTS representation: interned action labels, dense state ids, and an
// indexed transition relation with sorted successor lists.
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

namespace hmldist {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using StateSet = boost::dynamic_bitset<>;
using TraceWord = std::vector<ActionId>;

/// Sentinel for "infinite" levels and depths; strictly greater than any
/// finite value that fits in the refinement machinery.
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

/// Interns label strings to dense ids. An ActionTable is shared between an
/// Lts and any FormulaStore that talks about it, so action ids coincide and
/// no text mapping is needed in inner loops. Single writer; interning after
/// an Lts was built only extends the table, the Lts keeps its snapshot.
class ActionTable {
public:
    ActionId intern(std::string_view text);
    std::optional<ActionId> find(std::string_view text) const;
    const std::string& text(ActionId id) const;
    std::size_t size() const { return texts_.size(); }

private:
    std::vector<std::string> texts_;
    std::unordered_map<std::string, ActionId> index_;
};

struct Transition {
    StateId src;
    ActionId act;
    StateId dst;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

class Lts {
public:
    Lts() : actions_(std::make_shared<ActionTable>()) {}

    class Builder;

    std::size_t num_states() const { return num_states_; }
    /// Number of actions interned when this Lts was built.
    std::size_t num_actions() const { return num_actions_; }
    std::size_t num_transitions() const { return transitions_.size(); }
    StateId initial_state() const { return initial_; }

    const ActionTable& actions() const { return *actions_; }
    std::shared_ptr<ActionTable> actions_ptr() const { return actions_; }

    /// Sorted, duplicate-free a-successors of s. Actions outside the build
    /// snapshot have no successors anywhere.
    std::span<const StateId> successors(StateId s, ActionId a) const {
        if (a >= num_actions_) return {};
        const std::size_t base = std::size_t{s} * num_actions_ + a;
        return {targets_.data() + offsets_[base],
                offsets_[base + 1] - offsets_[base]};
    }

    bool has_edge(StateId s, ActionId a, StateId t) const;

    /// All transitions, sorted by (src, act, dst), duplicate-free.
    std::span<const Transition> transitions() const { return transitions_; }

private:
    std::shared_ptr<ActionTable> actions_;
    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    StateId initial_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::uint32_t> offsets_;  // (num_states*num_actions)+1 entries
    std::vector<StateId> targets_;
};

class Lts::Builder {
public:
    Builder() : actions_(std::make_shared<ActionTable>()) {}
    explicit Builder(std::shared_ptr<ActionTable> actions)
        : actions_(std::move(actions)) {}

    StateId add_state();
    void ensure_states(std::size_t n);
    std::size_t num_states() const { return num_states_; }

    ActionId action(std::string_view text) { return actions_->intern(text); }

    void add(StateId src, ActionId act, StateId dst);
    void add(StateId src, std::string_view act, StateId dst);
    void set_initial(StateId s) { initial_ = s; }

    /// Sorts and deduplicates the transition relation and freezes the
    /// (state, action) successor index.
    Lts build();

private:
    std::shared_ptr<ActionTable> actions_;
    std::size_t num_states_ = 0;
    StateId initial_ = 0;
    std::vector<Transition> transitions_;
};

/// Exactly { w in traces(s) : |w| <= max_len }. BFS over words with the set
/// of states reachable by each word, so diamond-shaped systems do not blow
/// up per state.
std::set<TraceWord> traces_up_to(const Lts& lts, StateId s, std::size_t max_len);

/// w in traces(s), decided by a reachability walk (never by enumeration).
bool has_trace(const Lts& lts, StateId s, const TraceWord& w);

/// "a.b.c" rendering of a word; "<empty>" for epsilon.
std::string word_text(const ActionTable& actions, const TraceWord& w);

}  // namespace hmldist
