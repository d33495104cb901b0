// Copyright 2026 The qrt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrt/textdiff.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace qrt {

namespace {

std::vector<std::string> splitLines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.emplace_back(text.substr(start));
            break;
        }
        lines.emplace_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

struct Op {
    enum class Kind { Keep, Delete, Insert } kind;
    size_t a = 0;  // index into before-lines (Keep/Delete)
    size_t b = 0;  // index into after-lines (Keep/Insert)
};

// Longest-common-subsequence edit script; inputs are small source files.
std::vector<Op> editScript(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    size_t n = a.size(), m = b.size();
    std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
    for (size_t i = n; i-- > 0;)
        for (size_t j = m; j-- > 0;)
            lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                                     : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    std::vector<Op> ops;
    size_t i = 0, j = 0;
    while (i < n && j < m) {
        if (a[i] == b[j]) {
            ops.push_back({Op::Kind::Keep, i++, j++});
        } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
            ops.push_back({Op::Kind::Delete, i++, 0});
        } else {
            ops.push_back({Op::Kind::Insert, 0, j++});
        }
    }
    while (i < n) ops.push_back({Op::Kind::Delete, i++, 0});
    while (j < m) ops.push_back({Op::Kind::Insert, 0, j++});
    return ops;
}

}  // namespace

std::string unifiedDiff(std::string_view before, std::string_view after,
                        std::string_view beforeLabel, std::string_view afterLabel, int context) {
    if (before == after) return {};
    std::vector<std::string> a = splitLines(before);
    std::vector<std::string> b = splitLines(after);
    std::vector<Op> ops = editScript(a, b);

    std::ostringstream out;
    out << "--- " << beforeLabel << '\n';
    out << "+++ " << afterLabel << '\n';

    size_t pos = 0;
    while (pos < ops.size()) {
        // find the next change
        while (pos < ops.size() && ops[pos].kind == Op::Kind::Keep) ++pos;
        if (pos == ops.size()) break;
        size_t hunkStart = pos >= static_cast<size_t>(context) ? pos - context : 0;
        // extend to cover nearby changes separated by <= 2*context keeps
        size_t hunkEnd = pos;
        size_t scan = pos;
        size_t keeps = 0;
        while (scan < ops.size()) {
            if (ops[scan].kind == Op::Kind::Keep) {
                ++keeps;
                if (keeps > static_cast<size_t>(2 * context)) break;
            } else {
                keeps = 0;
                hunkEnd = scan + 1;
            }
            ++scan;
        }
        size_t tail = std::min(ops.size(), hunkEnd + context);

        // hunk header: 1-based start lines of each side
        size_t aStart = 0, bStart = 0, aCount = 0, bCount = 0;
        for (size_t k = 0; k < hunkStart; ++k) {
            if (ops[k].kind != Op::Kind::Insert) ++aStart;
            if (ops[k].kind != Op::Kind::Delete) ++bStart;
        }
        for (size_t k = hunkStart; k < tail; ++k) {
            if (ops[k].kind != Op::Kind::Insert) ++aCount;
            if (ops[k].kind != Op::Kind::Delete) ++bCount;
        }
        out << "@@ -" << (aCount == 0 ? aStart : aStart + 1) << ',' << aCount << " +"
            << (bCount == 0 ? bStart : bStart + 1) << ',' << bCount << " @@\n";
        for (size_t k = hunkStart; k < tail; ++k) {
            switch (ops[k].kind) {
                case Op::Kind::Keep: out << ' ' << a[ops[k].a] << '\n'; break;
                case Op::Kind::Delete: out << '-' << a[ops[k].a] << '\n'; break;
                case Op::Kind::Insert: out << '+' << b[ops[k].b] << '\n'; break;
            }
        }
        pos = tail;
    }
    return out.str();
}

}  // namespace qrt
