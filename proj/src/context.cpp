#include "weylflow/context.hpp"

namespace weylflow {

Context::Context(ContextKind kind, std::string name, std::vector<std::string> symbols,
                 std::size_t phase_count, int time_index, int alpha_base)
  : kind_(kind)
  , name_(std::move(name))
  , symbols_(std::move(symbols))
  , phase_count_(phase_count)
  , time_index_(time_index)
  , alpha_base_(alpha_base) {}

const Context& Context::autonomous() {
    static const Context ctx(ContextKind::autonomous, "autonomous",
                             {"f0", "f1", "f2", "f3", "f4", "g1", "g2", "t",
                              "a0", "a1", "a2", "a3", "a4"},
                             7, 7, 8);
    return ctx;
}

const Context& Context::reduced() {
    static const Context ctx(ContextKind::reduced, "reduced",
                             {"x", "y", "z", "w", "T", "a0", "a1", "a2", "a3", "a4"},
                             4, 4, 5);
    return ctx;
}

const Context& Context::of(ContextKind k) {
    return k == ContextKind::autonomous ? autonomous() : reduced();
}

int Context::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

} // namespace weylflow
