#include "hmldist/lts.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hmldist {

ActionId ActionTable::intern(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("action label must be non-empty");
    auto it = index_.find(std::string(text));
    if (it != index_.end()) return it->second;
    const ActionId id = static_cast<ActionId>(texts_.size());
    texts_.emplace_back(text);
    index_.emplace(texts_.back(), id);
    return id;
}

std::optional<ActionId> ActionTable::find(std::string_view text) const {
    auto it = index_.find(std::string(text));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& ActionTable::text(ActionId id) const {
    return texts_.at(id);
}

bool Lts::has_edge(StateId s, ActionId a, StateId t) const {
    const auto succ = successors(s, a);
    return std::binary_search(succ.begin(), succ.end(), t);
}

StateId Lts::Builder::add_state() {
    return static_cast<StateId>(num_states_++);
}

void Lts::Builder::ensure_states(std::size_t n) {
    num_states_ = std::max(num_states_, n);
}

void Lts::Builder::add(StateId src, ActionId act, StateId dst) {
    if (src >= num_states_ || dst >= num_states_)
        throw std::out_of_range("transition endpoint out of range");
    transitions_.push_back({src, act, dst});
}

void Lts::Builder::add(StateId src, std::string_view act, StateId dst) {
    add(src, actions_->intern(act), dst);
}

Lts Lts::Builder::build() {
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                       transitions_.end());

    Lts lts;
    lts.actions_ = actions_;
    lts.num_states_ = num_states_;
    lts.num_actions_ = actions_->size();
    lts.initial_ = initial_;
    lts.transitions_ = transitions_;

    const std::size_t cells = num_states_ * lts.num_actions_;
    std::vector<std::uint32_t> counts(cells, 0);
    for (const auto& tr : lts.transitions_)
        ++counts[std::size_t{tr.src} * lts.num_actions_ + tr.act];
    lts.offsets_.assign(cells + 1, 0);
    for (std::size_t i = 0; i < cells; ++i)
        lts.offsets_[i + 1] = lts.offsets_[i] + counts[i];
    lts.targets_.resize(lts.transitions_.size());
    std::vector<std::uint32_t> cursor(lts.offsets_.begin(),
                                      lts.offsets_.end() - 1);
    for (const auto& tr : lts.transitions_)
        lts.targets_[cursor[std::size_t{tr.src} * lts.num_actions_ + tr.act]++] =
            tr.dst;
    return lts;
}

std::set<TraceWord> traces_up_to(const Lts& lts, StateId s,
                                 std::size_t max_len) {
    std::set<TraceWord> result;
    result.insert(TraceWord{});
    std::map<TraceWord, StateSet> frontier;
    StateSet start(lts.num_states());
    start.set(s);
    frontier.emplace(TraceWord{}, std::move(start));

    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::map<TraceWord, StateSet> next;
        for (const auto& [word, states] : frontier) {
            for (ActionId a = 0; a < lts.num_actions(); ++a) {
                StateSet reach(lts.num_states());
                for (std::size_t x = states.find_first(); x != StateSet::npos;
                     x = states.find_next(x)) {
                    for (StateId y : lts.successors(static_cast<StateId>(x), a))
                        reach.set(y);
                }
                if (reach.none()) continue;
                TraceWord extended = word;
                extended.push_back(a);
                result.insert(extended);
                next.emplace(std::move(extended), std::move(reach));
            }
        }
        frontier = std::move(next);
    }
    return result;
}

bool has_trace(const Lts& lts, StateId s, const TraceWord& w) {
    StateSet states(lts.num_states());
    states.set(s);
    for (ActionId a : w) {
        StateSet next(lts.num_states());
        for (std::size_t x = states.find_first(); x != StateSet::npos;
             x = states.find_next(x)) {
            for (StateId y : lts.successors(static_cast<StateId>(x), a))
                next.set(y);
        }
        if (next.none()) return false;
        states = std::move(next);
    }
    return true;
}

std::string word_text(const ActionTable& actions, const TraceWord& w) {
    if (w.empty()) return "<empty>";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) out += '.';
        out += actions.text(w[i]);
    }
    return out;
}

}  // namespace hmldist
