#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sifs/error.hpp"

namespace sifs {

/// Finite word j1 j2 ... jk over the 1-based alphabet {1, ..., M}.
///
/// j1 is the outermost symbol: for a depth-k tile it selects the level-k map.
/// The built-in operator<=> is plain lexicographic order on symbol values. The
/// tiling order ranks symbol 1 highest (i > i+1), so for words of equal length
/// "greater in tiling order" is exactly "smaller in plain order"; see top_greater().
class Address {
public:
    Address() = default;
    Address(std::initializer_list<int> symbols) {
        for (int s : symbols) push_back(s);
    }
    explicit Address(std::vector<std::uint8_t> symbols) : symbols_(std::move(symbols)) {
        for (auto s : symbols_)
            if (s == 0) throw DomainError("address symbols are 1-based");
    }

    /// Parses "6712"; multi-digit alphabets use '.' separators ("10.2.3").
    static Address parse(std::string_view text) {
        Address a;
        if (text.find('.') != std::string_view::npos) {
            std::size_t start = 0;
            while (start <= text.size()) {
                std::size_t dot = text.find('.', start);
                std::string_view part = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
                if (part.empty()) throw ParseError("empty address symbol", start);
                int v = 0;
                for (char ch : part) {
                    if (ch < '0' || ch > '9') throw ParseError("bad address symbol", start);
                    v = v * 10 + (ch - '0');
                }
                a.push_back(v, start);
                if (dot == std::string_view::npos) break;
                start = dot + 1;
            }
            return a;
        }
        for (std::size_t i = 0; i < text.size(); ++i) {
            char ch = text[i];
            if (ch < '1' || ch > '9') throw ParseError(std::string("bad address symbol '") + ch + "'", i);
            a.push_back(ch - '0', i);
        }
        return a;
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    int operator[](std::size_t i) const { return symbols_[i]; }
    int front() const { return symbols_.front(); }
    int back() const { return symbols_.back(); }
    const std::vector<std::uint8_t>& symbols() const { return symbols_; }

    void push_back(int s, std::size_t position = 0) {
        if (s < 1 || s > 255) throw ParseError("address symbol out of range", position);
        symbols_.push_back(static_cast<std::uint8_t>(s));
    }

    Address prefixed(int s) const {
        Address a;
        a.symbols_.reserve(symbols_.size() + 1);
        a.symbols_.push_back(static_cast<std::uint8_t>(s));
        a.symbols_.insert(a.symbols_.end(), symbols_.begin(), symbols_.end());
        return a;
    }

    /// j|n, the first n symbols.
    Address truncated(std::size_t n) const {
        Address a;
        a.symbols_.assign(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
        return a;
    }

    Address suffix_from(std::size_t start) const {
        Address a;
        if (start < size()) a.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(start), symbols_.end());
        return a;
    }

    friend Address operator+(const Address& a, const Address& b) {
        Address r = a;
        r.symbols_.insert(r.symbols_.end(), b.symbols_.begin(), b.symbols_.end());
        return r;
    }

    /// True when `word` occurs as a contiguous factor.
    bool contains_factor(const Address& word) const {
        if (word.size() > size()) return false;
        for (std::size_t i = 0; i + word.size() <= size(); ++i) {
            bool match = true;
            for (std::size_t j = 0; j < word.size() && match; ++j) match = symbols_[i + j] == word.symbols_[j];
            if (match) return true;
        }
        return false;
    }

    std::string str() const {
        bool wide = false;
        for (auto s : symbols_) wide = wide || s > 9;
        std::string out;
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (wide && i > 0) out += '.';
            out += std::to_string(symbols_[i]);
        }
        return out;
    }

    friend bool operator==(const Address&, const Address&) = default;
    friend std::strong_ordering operator<=>(const Address& a, const Address& b) {
        return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(), b.symbols_.begin(),
                                                      b.symbols_.end());
    }

private:
    std::vector<std::uint8_t> symbols_;
};

/// Tiling order on equal-length words: symbol 1 is greatest, so at the first
/// differing position the smaller symbol wins.
inline bool top_greater(const Address& a, const Address& b) { return a < b; }

}  // namespace sifs

template <>
struct std::hash<sifs::Address> {
    std::size_t operator()(const sifs::Address& a) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto s : a.symbols()) h = (h ^ s) * 1099511628211ULL;
        return h;
    }
};
