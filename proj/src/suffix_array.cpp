#include "cdok/suffix_array.hpp"

#include <algorithm>

namespace cdok {

namespace {

// One stable counting-sort pass of `order` by key[] in [0, buckets).
void counting_pass(std::vector<std::uint32_t>& order, const std::vector<std::uint32_t>& key, std::size_t buckets,
                   std::vector<std::uint32_t>& scratch) {
    std::vector<std::uint32_t> count(buckets + 1, 0);
    for (auto i : order) ++count[key[i] + 1];
    for (std::size_t b = 1; b <= buckets; ++b) count[b] += count[b - 1];
    scratch.resize(order.size());
    for (auto i : order) scratch[count[key[i]]++] = i;
    order.swap(scratch);
}

}

SuffixArray build_suffix_array(std::string_view text) {
    const std::size_t n = text.size() + 1;
    SuffixArray out;
    std::vector<std::uint32_t> cls(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cls[i] = static_cast<std::uint32_t>(static_cast<unsigned char>(text[i])) + 1;
    }
    cls[n - 1] = 0;

    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> scratch;
    counting_pass(order, cls, 257, scratch);

    // Re-rank so classes are dense.
    std::vector<std::uint32_t> next(n);
    std::size_t classes = 1;
    next[order[0]] = 0;
    for (std::size_t r = 1; r < n; ++r) {
        if (cls[order[r]] != cls[order[r - 1]]) ++classes;
        next[order[r]] = static_cast<std::uint32_t>(classes - 1);
    }
    cls.swap(next);

    std::vector<std::uint32_t> second(n);
    for (std::size_t k = 1; classes < n; k <<= 1) {
        // Sort by (cls[i], cls[i + k]) with cyclic wrap; the sentinel is unique
        // so cyclic and plain suffix orders agree.
        for (std::size_t i = 0; i < n; ++i) second[i] = cls[(i + k) % n];
        counting_pass(order, second, classes, scratch);
        counting_pass(order, cls, classes, scratch);
        classes = 1;
        next[order[0]] = 0;
        for (std::size_t r = 1; r < n; ++r) {
            const auto a = order[r - 1];
            const auto b = order[r];
            if (cls[a] != cls[b] || cls[(a + k) % n] != cls[(b + k) % n]) ++classes;
            next[b] = static_cast<std::uint32_t>(classes - 1);
        }
        cls.swap(next);
    }

    out.sa = std::move(order);
    out.rank.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) out.rank[out.sa[r]] = static_cast<std::uint32_t>(r);

    out.lcp.assign(n, 0);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = out.rank[i];
        if (r == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = out.sa[r - 1];
        while (i + h < n - 1 && j + h < n - 1 && text[i + h] == text[j + h]) ++h;
        out.lcp[r] = static_cast<std::uint32_t>(h);
        if (h > 0) --h;
    }
    return out;
}

}
