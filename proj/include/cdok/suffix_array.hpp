#ifndef cdok_suffix_array_hpp
#define cdok_suffix_array_hpp

#include <cstdint>
#include <string_view>
#include <vector>

namespace cdok {

/*
 * Suffix array of text + sentinel, where the sentinel sorts below every
 * byte. sa[0] is always the sentinel suffix (start == text.size()).
 * lcp[r] is the longest common prefix of the suffixes at sa[r - 1] and
 * sa[r]; lcp[0] = 0.
 */
struct SuffixArray {
    std::vector<std::uint32_t> sa;
    std::vector<std::uint32_t> rank;
    std::vector<std::uint32_t> lcp;
};

/// Prefix doubling with counting sort, O(n log n); LCP by Kasai's scan.
SuffixArray build_suffix_array(std::string_view text);

}

#endif /* cdok_suffix_array_hpp */
