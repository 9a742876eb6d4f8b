#include "isphere/errors.hpp"
#include "isphere/exactla.hpp"
#include "isphere/persmod.hpp"

#include <algorithm>
#include <map>

namespace isphere {

namespace {

struct LiveBar {
    std::size_t id;
    std::size_t first;
    std::vector<Vector> history;  // history[j - first] is the vector at node j
};

} // namespace

// Left-to-right sweep. At every node the live bars form a basis; their images
// are reduced oldest first, and a bar whose image depends on older images is
// rewritten (at every node since its birth) so that it maps to zero and dies.
BarcodeResult barcode(const PersModule& m)
{
    const std::size_t n = m.node_count();
    std::vector<LiveBar> live;
    std::vector<LiveBar> dead;
    std::vector<BarRecord> records;  // indexed by id
    std::size_t next_id = 0;

    auto open_bars = [&](std::size_t node, const Matrix& existing) {
        Matrix extra = exactla::complete_basis(existing, m.dim(node));
        for (std::size_t c = 0; c < extra.cols(); ++c) {
            live.push_back({next_id++, node, {extra.column(c)}});
            records.push_back({node, node});
        }
    };

    if (n > 0)
        open_bars(0, Matrix(m.dim(0), 0));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const Matrix& step = m.step(j);
        std::vector<LiveBar> survivors;
        std::vector<Vector> images;
        for (auto& bar : live) {
            Vector w = step * bar.history.back();
            std::optional<Vector> coeff;
            if (!images.empty())
                coeff = exactla::solve_linear(Matrix::from_columns(m.dim(j + 1), images), w);
            else if (is_zero(w))
                coeff = Vector{};
            if (!coeff) {
                images.push_back(w);
                survivors.push_back(std::move(bar));
                continue;
            }
            for (std::size_t a = 0; a < coeff->size(); ++a) {
                if (is_zero((*coeff)[a]))
                    continue;
                const LiveBar& older = survivors[a];
                for (std::size_t h = 0; h < bar.history.size(); ++h) {
                    std::size_t node = bar.first + h;
                    bar.history[h] = bar.history[h] - (*coeff)[a] * older.history[node - older.first];
                }
            }
            records[bar.id].last = j;
            dead.push_back(std::move(bar));
        }
        for (std::size_t a = 0; a < survivors.size(); ++a)
            survivors[a].history.push_back(images[a]);
        live = std::move(survivors);
        open_bars(j + 1, Matrix::from_columns(m.dim(j + 1), images));
    }
    for (auto& bar : live) {
        records[bar.id].last = n - 1;
        dead.push_back(std::move(bar));
    }

    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].first != records[b].first)
            return records[a].first < records[b].first;
        return records[a].last < records[b].last;
    });
    std::vector<const LiveBar*> by_id(records.size());
    for (const auto& bar : dead)
        by_id[bar.id] = &bar;

    BarcodeResult res;
    for (auto id : order)
        res.bars.push_back(records[id]);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Vector> cols;
        for (auto id : order)
            if (records[id].first <= j && j <= records[id].last)
                cols.push_back(by_id[id]->history[j - records[id].first]);
        res.basis.push_back(Matrix::from_columns(m.dim(j), cols));
    }
    res.barcode = barcode_of_records(m.grid(), res.bars);
    return res;
}

DecoratedBarcode barcode_of_records(const EventGrid& g, const std::vector<BarRecord>& bars)
{
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
    for (const auto& b : bars)
        ++counts[{b.first, b.last}];
    DecoratedBarcode out;
    for (const auto& [range, mult] : counts)
        out.bars.push_back({interval_from_nodes(g, range.first, range.second), mult});
    return out;
}

std::vector<Matrix> normal_form_steps(const std::vector<BarRecord>& bars, std::size_t nodes)
{
    std::vector<Matrix> steps;
    for (std::size_t j = 0; j + 1 < nodes; ++j) {
        std::vector<std::size_t> here, there;
        for (std::size_t b = 0; b < bars.size(); ++b) {
            if (bars[b].first <= j && j <= bars[b].last)
                here.push_back(b);
            if (bars[b].first <= j + 1 && j + 1 <= bars[b].last)
                there.push_back(b);
        }
        Matrix s(there.size(), here.size());
        for (std::size_t r = 0; r < there.size(); ++r)
            for (std::size_t c = 0; c < here.size(); ++c)
                if (there[r] == here[c])
                    s(r, c) = 1;
        steps.push_back(std::move(s));
    }
    return steps;
}

} // namespace isphere
