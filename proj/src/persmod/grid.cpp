#include "isphere/errors.hpp"
#include "isphere/persmod.hpp"

#include <algorithm>

namespace isphere {

EventGrid::EventGrid(std::vector<Rational> values) : values_(std::move(values))
{
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (sgn(values_[i]) < 0)
            throw UsageError("grid value " + format_rational(values_[i]) + " is negative");
        if (i > 0 && values_[i] <= values_[i - 1])
            throw UsageError("grid values must be strictly increasing");
    }
}

std::optional<std::size_t> EventGrid::index_of(const Rational& v) const
{
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v)
        return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

std::size_t EventGrid::require_index(const Rational& v) const
{
    auto i = index_of(v);
    if (!i)
        throw UsageError("value " + format_rational(v) + " is not on the grid (refine the grid first)");
    return *i;
}

std::optional<std::size_t> EventGrid::node_containing(const Rational& r) const
{
    if (values_.empty() || r < values_.front())
        return std::nullopt;
    auto it = std::upper_bound(values_.begin(), values_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - values_.begin()) - 1;
    return values_[i] == r ? at_node(i) : germ_node(i);
}

std::string EventGrid::node_label(std::size_t node) const
{
    if (node >= node_count())
        throw UsageError("node index out of range");
    return format_rational(values_[value_index(node)]) + (is_germ(node) ? "+" : "");
}

std::size_t EventGrid::parse_node(const std::string& label) const
{
    bool germ = !label.empty() && label.back() == '+';
    std::size_t i = require_index(parse_rational(germ ? label.substr(0, label.size() - 1) : label));
    return germ ? germ_node(i) : at_node(i);
}

EventGrid merge_grids(const EventGrid& a, const std::vector<Rational>& extra)
{
    std::vector<Rational> all = a.values();
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return EventGrid(std::move(all));
}

DecoratedInterval DecoratedInterval::half_open(const Rational& s, std::optional<Rational> t)
{
    return {s, LeftDec::ClosedAt, std::move(t), RightDec::OpenBefore};
}

DecoratedInterval DecoratedInterval::closed(const Rational& s, const Rational& t)
{
    return {s, LeftDec::ClosedAt, t, RightDec::ClosedThrough};
}

DecoratedInterval DecoratedInterval::open(const Rational& s, std::optional<Rational> t)
{
    return {s, LeftDec::OpenAfter, std::move(t), RightDec::OpenBefore};
}

std::size_t DecoratedInterval::first_node(const EventGrid& g) const
{
    std::size_t i = g.require_index(left);
    return left_dec == LeftDec::ClosedAt ? EventGrid::at_node(i) : EventGrid::germ_node(i);
}

std::size_t DecoratedInterval::last_node(const EventGrid& g) const
{
    if (!right) {
        if (right_dec == RightDec::ClosedThrough)
            throw UsageError("an interval cannot be closed at infinity");
        return g.node_count() - 1;
    }
    std::size_t j = g.require_index(*right);
    if (right_dec == RightDec::ClosedThrough)
        return EventGrid::at_node(j);
    if (j == 0)
        throw UsageError("interval ending before the first grid value is empty");
    return EventGrid::at_node(j) - 1;
}

DecoratedInterval interval_from_nodes(const EventGrid& g, std::size_t first, std::size_t last)
{
    if (first > last || last >= g.node_count())
        throw UsageError("invalid node range for an interval");
    DecoratedInterval iv;
    iv.left = g.value(EventGrid::value_index(first));
    iv.left_dec = EventGrid::is_germ(first) ? LeftDec::OpenAfter : LeftDec::ClosedAt;
    if (last == g.node_count() - 1) {
        iv.right = std::nullopt;
        iv.right_dec = RightDec::OpenBefore;
    } else if (EventGrid::is_germ(last)) {
        iv.right = g.value(EventGrid::value_index(last) + 1);
        iv.right_dec = RightDec::OpenBefore;
    } else {
        iv.right = g.value(EventGrid::value_index(last));
        iv.right_dec = RightDec::ClosedThrough;
    }
    return iv;
}

std::string DecoratedInterval::to_string() const
{
    std::string s = left_dec == LeftDec::ClosedAt ? "[" : "(";
    s += format_rational(left) + ",";
    if (!right)
        return s + "inf)";
    return s + format_rational(*right) + (right_dec == RightDec::ClosedThrough ? "]" : ")");
}

bool DecoratedInterval::operator==(const DecoratedInterval& o) const
{
    return left == o.left && left_dec == o.left_dec && right == o.right && right_dec == o.right_dec;
}

std::size_t DecoratedBarcode::bar_count() const
{
    std::size_t n = 0;
    for (const auto& b : bars)
        n += b.multiplicity;
    return n;
}

std::string DecoratedBarcode::to_text() const
{
    std::string out;
    for (const auto& b : bars) {
        out += b.interval.to_string();
        if (b.multiplicity > 1)
            out += " x" + std::to_string(b.multiplicity);
        out += "\n";
    }
    return out;
}

bool DecoratedBarcode::operator==(const DecoratedBarcode& o) const
{
    if (bars.size() != o.bars.size())
        return false;
    for (std::size_t i = 0; i < bars.size(); ++i)
        if (bars[i].interval != o.bars[i].interval || bars[i].multiplicity != o.bars[i].multiplicity)
            return false;
    return true;
}

} // namespace isphere
