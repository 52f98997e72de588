#ifndef WEYLFLOW_CONTEXT_HPP
#define WEYLFLOW_CONTEXT_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace weylflow {

enum class ContextKind { autonomous, reduced };

// One of two fixed, immutable symbol orderings:
//   autonomous: f0 f1 f2 f3 f4 g1 g2 t  a0 a1 a2 a3 a4
//   reduced:    x  y  z  w  T           a0 a1 a2 a3 a4
// Both are process-wide singletons; polynomials reference them by pointer,
// so context equality is pointer equality.
class Context {
public:
    static const Context& autonomous();
    static const Context& reduced();
    static const Context& of(ContextKind k);

    ContextKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return symbols_.size(); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::string& symbol(int i) const { return symbols_[static_cast<std::size_t>(i)]; }

    // -1 when the name is not a symbol of this context.
    int index_of(std::string_view name) const;

    std::size_t phase_count() const { return phase_count_; }
    int phase_index(std::size_t i) const { return static_cast<int>(i); }
    int time_index() const { return time_index_; }
    int alpha_index(std::size_t k) const { return alpha_base_ + static_cast<int>(k); }

    bool operator==(const Context& o) const { return this == &o; }

    Context(const Context&) = delete;
    Context& operator=(const Context&) = delete;

private:
    Context(ContextKind kind, std::string name, std::vector<std::string> symbols,
            std::size_t phase_count, int time_index, int alpha_base);

    ContextKind kind_;
    std::string name_;
    std::vector<std::string> symbols_;
    std::size_t phase_count_;
    int time_index_;
    int alpha_base_;
};

} // namespace weylflow

#endif
