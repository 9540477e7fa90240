#include "ksforge/strip.hpp"

#include <algorithm>
#include <stdexcept>

namespace ksforge {

std::string to_string(Count c) {
    if (c == 0) return "0";
    std::string s;
    while (c) {
        s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
        c /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

Count parse_count(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty count");
    Count value = 0;
    const Count limit = ~Count{0};
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("not a decimal count: " + std::string(text));
        const auto digit = static_cast<Count>(ch - '0');
        if (value > (limit - digit) / 10) throw std::invalid_argument("count overflows: " + std::string(text));
        value = value * 10 + digit;
    }
    return value;
}

Count binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Count result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i stays integral at every step.
        const Count num = n - k + i;
        if (result > (~Count{0}) / num) throw std::overflow_error("binomial coefficient overflows 128 bits");
        result = result * num / i;
    }
    return result;
}

Count rank_combination(std::size_t n, const std::vector<std::size_t>& combo) {
    const std::size_t k = combo.size();
    Count rank = 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (combo[i] >= n || combo[i] < c) throw std::invalid_argument("combination is not ascending within range");
        for (; c < combo[i]; ++c) rank += binomial(n - c - 1, k - i - 1);
        ++c;
    }
    return rank + 1;
}

std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, Count rank) {
    if (k > n) throw std::invalid_argument("k exceeds n");
    if (rank < 1 || rank > binomial(n, k)) throw std::out_of_range("rank out of range");
    Count r = rank - 1;
    std::vector<std::size_t> combo(k);
    std::size_t c = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (;;) {
            const Count block = binomial(n - c - 1, k - i - 1);
            if (r < block) break;
            r -= block;
            ++c;
        }
        combo[i] = c++;
    }
    return combo;
}

Count count_strips(const Hypergraph& h, std::size_t k) {
    if (k > h.edge_count())
        throw std::invalid_argument("k = " + std::to_string(k) + " exceeds block count " +
                                    std::to_string(h.edge_count()));
    return binomial(h.edge_count(), k);
}

void validate_plan(const Hypergraph& h, const StripPlan& plan) {
    const Count total = count_strips(h, plan.k);
    const Count end = plan.end == 0 ? total : plan.end;
    if (plan.increment < 1) throw std::invalid_argument("increment must be at least 1");
    if (plan.start < 1 || plan.start > end) throw std::invalid_argument("start must satisfy 1 <= start <= end");
    if (end > total) throw std::invalid_argument("end exceeds C(B, k) = " + to_string(total));
}

namespace {

// Successor in lexicographic order; false after the last combination.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

}  // namespace

void enumerate_strips(const Hypergraph& h, const StripPlan& plan, const std::function<bool(const Strip&)>& sink) {
    validate_plan(h, plan);
    const std::size_t n = h.edge_count();
    const Count end = plan.end == 0 ? count_strips(h, plan.k) : plan.end;

    // Small strides walk the successor chain; large ones unrank directly.
    constexpr Count kWalkLimit = 64;
    std::vector<std::size_t> combo = unrank_combination(n, plan.k, plan.start);
    for (Count rank = plan.start;;) {
        Strip s;
        s.rank = rank;
        s.removed = combo;
        s.graph = h.without_edges(combo);
        if (!plan.drop_disconnected || s.graph.is_connected()) {
            if (plan.renormalize_output) s.graph = renormalize(s.graph);
            if (!sink(s)) return;
        }
        if (end - rank < plan.increment) break;
        rank += plan.increment;
        if (plan.increment <= kWalkLimit) {
            for (Count step = 0; step < plan.increment; ++step) next_combination(combo, n);
        } else {
            combo = unrank_combination(n, plan.k, rank);
        }
    }
}

std::vector<Hypergraph> collect_strips(const Hypergraph& h, const StripPlan& plan) {
    std::vector<Hypergraph> out;
    enumerate_strips(h, plan, [&](const Strip& s) {
        out.push_back(s.graph);
        return true;
    });
    return out;
}

bool ExactDeduper::insert(const Hypergraph& h) {
    return seen_.insert(renormalize(h).exact_key()).second;
}

std::vector<Hypergraph> dedupe_exact(const std::vector<Hypergraph>& stream) {
    ExactDeduper seen;
    std::vector<Hypergraph> out;
    for (const Hypergraph& h : stream)
        if (seen.insert(h)) out.push_back(h);
    return out;
}

}  // namespace ksforge
