/*
 * Copyright 2026 TriLex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TRILEX_UNICODE_HPP
#define TRILEX_UNICODE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trilex::uni {

/// Decode UTF-8 to a sequence of Unicode scalar values. Invalid bytes are
/// replaced with U+FFFD rather than rejected; lexicon sources are scraped
/// and occasionally carry mojibake.
inline std::u32string decode_utf8(const std::string& s) {
    std::u32string out;
    out.reserve(s.size());
    size_t i = 0;
    const size_t n = s.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        char32_t cp = 0xFFFD;
        size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c >> 5) == 0x6 && i + 1 < n) {
            cp = static_cast<char32_t>((c & 0x1F) << 6 |
                                       (static_cast<unsigned char>(s[i + 1]) & 0x3F));
            len = 2;
        } else if ((c >> 4) == 0xE && i + 2 < n) {
            cp = static_cast<char32_t>((c & 0x0F) << 12 |
                                       (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6 |
                                       (static_cast<unsigned char>(s[i + 2]) & 0x3F));
            len = 3;
        } else if ((c >> 3) == 0x1E && i + 3 < n) {
            cp = static_cast<char32_t>((c & 0x07) << 18 |
                                       (static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12 |
                                       (static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6 |
                                       (static_cast<unsigned char>(s[i + 3]) & 0x3F));
            len = 4;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode_utf8(const std::u32string& s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) append_utf8(out, cp);
    return out;
}

/// Simple case folding for the Latin repertoire the lexicon actually uses:
/// ASCII, Latin-1 Supplement, Latin Extended-A.
inline char32_t fold_case(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp == 0x130) return U'i';  // I with dot above
    if (cp == 0x178) return 0xFF;  // Y with diaeresis
    // Latin Extended-A pairs: uppercase is even except in the L/N and Z
    // blocks where the pairing is odd/even.
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
        return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp >= 0x100 && cp <= 0x177) {
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    return cp;
}

/// Map a precomposed Latin letter to its unaccented base, or return the
/// input unchanged. Combining marks (U+0300..U+036F) map to the empty
/// string. Multi-character expansions (ae, oe, ss, ij) are supported.
inline std::u32string fold_accent(char32_t cp) {
    auto one = [](char32_t c) { return std::u32string(1, c); };
    if (cp >= 0x300 && cp <= 0x36F) return U"";
    switch (cp) {
        case 0xDF: return U"ss";
        case 0xC6: return U"AE";
        case 0xE6: return U"ae";
        case 0x152: return U"OE";
        case 0x153: return U"oe";
        case 0x132: return U"IJ";
        case 0x133: return U"ij";
        case 0xD0: case 0x110: return U"D";
        case 0xF0: case 0x111: return U"d";
        case 0xD8: return U"O";
        case 0xF8: return U"o";
        case 0xDE: return U"TH";
        case 0xFE: return U"th";
        case 0x126: return U"H";
        case 0x127: return U"h";
        case 0x141: return U"L";
        case 0x142: return U"l";
        case 0x149: return U"n";
        case 0x14A: return U"N";
        case 0x14B: return U"n";
        case 0x131: return U"i";
        case 0x138: return U"k";
        case 0x17F: return U"s";
        default: break;
    }
    if (cp >= 0xC0 && cp <= 0xC5) return U"A";
    if (cp == 0xC7) return U"C";
    if (cp >= 0xC8 && cp <= 0xCB) return U"E";
    if (cp >= 0xCC && cp <= 0xCF) return U"I";
    if (cp == 0xD1) return U"N";
    if (cp >= 0xD2 && cp <= 0xD6) return U"O";
    if (cp >= 0xD9 && cp <= 0xDC) return U"U";
    if (cp == 0xDD) return U"Y";
    if (cp >= 0xE0 && cp <= 0xE5) return U"a";
    if (cp == 0xE7) return U"c";
    if (cp >= 0xE8 && cp <= 0xEB) return U"e";
    if (cp >= 0xEC && cp <= 0xEF) return U"i";
    if (cp == 0xF1) return U"n";
    if (cp >= 0xF2 && cp <= 0xF6) return U"o";
    if (cp >= 0xF9 && cp <= 0xFC) return U"u";
    if (cp == 0xFD || cp == 0xFF) return U"y";
    if (cp >= 0x100 && cp <= 0x17E) {
        // Latin Extended-A. Uppercase code points are even except in the
        // L, N, and Z blocks where the pairing starts on an odd value.
        bool lower = (cp % 2 == 1);
        if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
            lower = (cp % 2 == 0);
        }
        char32_t b = 0;
        if (cp <= 0x105) b = U'A';
        else if (cp <= 0x10D) b = U'C';
        else if (cp <= 0x10F) b = U'D';
        else if (cp >= 0x112 && cp <= 0x11B) b = U'E';
        else if (cp >= 0x11C && cp <= 0x123) b = U'G';
        else if (cp == 0x124 || cp == 0x125) b = U'H';
        else if (cp >= 0x128 && cp <= 0x130) b = U'I';
        else if (cp == 0x134 || cp == 0x135) b = U'J';
        else if (cp == 0x136 || cp == 0x137) b = U'K';
        else if (cp >= 0x139 && cp <= 0x140) b = U'L';
        else if (cp >= 0x143 && cp <= 0x148) b = U'N';
        else if (cp >= 0x14C && cp <= 0x151) b = U'O';
        else if (cp >= 0x154 && cp <= 0x159) b = U'R';
        else if (cp >= 0x15A && cp <= 0x161) b = U'S';
        else if (cp >= 0x162 && cp <= 0x167) b = U'T';
        else if (cp >= 0x168 && cp <= 0x173) b = U'U';
        else if (cp == 0x174 || cp == 0x175) b = U'W';
        else if (cp == 0x176 || cp == 0x177) b = U'Y';
        else if (cp >= 0x179 && cp <= 0x17E) b = U'Z';
        if (b != 0) return one(lower ? b + 0x20 : b);
    }
    if (cp == 0x178) return U"Y";
    return one(cp);
}

inline bool is_whitespace(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
           cp == U'\f' || cp == U'\v' || cp == 0xA0;
}

inline bool is_ascii_alnum(char32_t cp) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
           (cp >= U'A' && cp <= U'Z');
}

/// Anything non-ASCII that is not a combining mark is treated as a letter.
inline bool is_letterlike(char32_t cp) {
    if (cp < 0x80) return is_ascii_alnum(cp);
    return !(cp >= 0x300 && cp <= 0x36F);
}

/// Levenshtein distance with unit-cost insert/delete/substitute over
/// Unicode scalar values.
inline size_t levenshtein(const std::u32string& a, const std::u32string& b) {
    if (a == b) return 0;
    const size_t m = a.size(), n = b.size();
    if (m == 0) return n;
    if (n == 0) return m;
    std::vector<size_t> prev(n + 1), cur(n + 1);
    for (size_t j = 0; j <= n; ++j) prev[j] = j;
    for (size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= n; ++j) {
            size_t cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

inline size_t levenshtein(const std::string& a, const std::string& b) {
    return levenshtein(decode_utf8(a), decode_utf8(b));
}

}  // namespace trilex::uni

#endif  // TRILEX_UNICODE_HPP
