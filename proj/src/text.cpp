#include "chronoalign/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>

#include "chronoalign/error.hpp"

namespace chronoalign {

void RepetitionConfig::validate() const {
    if (max_n < 1) {
        throw ConfigError("repetition max_n must be >= 1");
    }
    if (min_repeats < 2) {
        throw ConfigError("repetition min_repeats must be >= 2");
    }
}

namespace {

std::u16string to_utf16(std::string_view utf8) {
    std::u16string out(utf8.size() + 1, u'\0');
    UErrorCode status = U_ZERO_ERROR;
    int32_t len = 0;
    u_strFromUTF8(out.data(), static_cast<int32_t>(out.size()), &len, utf8.data(),
                  static_cast<int32_t>(utf8.size()), &status);
    if (U_FAILURE(status)) {
        throw InputError("invalid UTF-8 input: " + std::string(u_errorName(status)));
    }
    out.resize(static_cast<std::size_t>(len));
    return out;
}

std::string to_utf8(const std::u16string& utf16) {
    std::string out(utf16.size() * 3 + 1, '\0');
    UErrorCode status = U_ZERO_ERROR;
    int32_t len = 0;
    u_strToUTF8(out.data(), static_cast<int32_t>(out.size()), &len, utf16.data(),
                static_cast<int32_t>(utf16.size()), &status);
    if (U_FAILURE(status)) {
        throw InputError("UTF-16 to UTF-8 conversion failed: " + std::string(u_errorName(status)));
    }
    out.resize(static_cast<std::size_t>(len));
    return out;
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_ascii_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string nfc(std::string_view utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) {
        throw Error("ICU NFC normalizer unavailable: " + std::string(u_errorName(status)));
    }
    const std::u16string in = to_utf16(utf8);
    std::u16string out(in.size() * 2 + 8, u'\0');
    int32_t len = unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()), out.data(),
                                   static_cast<int32_t>(out.size()), &status);
    if (status == U_BUFFER_OVERFLOW_ERROR) {
        status = U_ZERO_ERROR;
        out.assign(static_cast<std::size_t>(len), u'\0');
        len = unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()), out.data(),
                               static_cast<int32_t>(out.size()), &status);
    }
    if (U_FAILURE(status)) {
        throw InputError("NFC normalization failed: " + std::string(u_errorName(status)));
    }
    out.resize(static_cast<std::size_t>(len));
    return to_utf8(out);
}

std::vector<std::string> normalize_tokens(std::string_view text) {
    const std::string composed = nfc(text);
    std::vector<std::string> tokens;
    const auto* bytes = reinterpret_cast<const uint8_t*>(composed.data());
    const auto size = static_cast<int32_t>(composed.size());
    int32_t i = 0;
    int32_t token_start = -1;
    while (i < size) {
        const int32_t cp_start = i;
        UChar32 cp;
        U8_NEXT(bytes, i, size, cp);
        if (cp < 0) {
            throw InputError("invalid UTF-8 sequence at byte " + std::to_string(cp_start));
        }
        if (u_isUWhiteSpace(cp)) {
            if (token_start >= 0) {
                tokens.emplace_back(composed.substr(static_cast<std::size_t>(token_start),
                                                    static_cast<std::size_t>(cp_start - token_start)));
                token_start = -1;
            }
        } else if (token_start < 0) {
            token_start = cp_start;
        }
    }
    if (token_start >= 0) {
        tokens.emplace_back(composed.substr(static_cast<std::size_t>(token_start)));
    }
    return tokens;
}

std::vector<std::string> collapse_repetitions(std::vector<std::string> tokens,
                                              const RepetitionConfig& cfg) {
    cfg.validate();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int n = cfg.max_n; n >= 1; --n) {
            const auto un = static_cast<std::size_t>(n);
            if (tokens.size() < un * static_cast<std::size_t>(cfg.min_repeats)) {
                continue;
            }
            std::vector<std::string> out;
            out.reserve(tokens.size());
            std::size_t i = 0;
            while (i < tokens.size()) {
                std::size_t repeats = 1;
                while (i + (repeats + 1) * un <= tokens.size() &&
                       std::equal(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                  tokens.begin() + static_cast<std::ptrdiff_t>(i + un),
                                  tokens.begin() + static_cast<std::ptrdiff_t>(i + repeats * un))) {
                    ++repeats;
                }
                if (repeats >= static_cast<std::size_t>(cfg.min_repeats)) {
                    out.insert(out.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i),
                               tokens.begin() + static_cast<std::ptrdiff_t>(i + un));
                    i += repeats * un;
                    changed = true;
                } else {
                    out.push_back(std::move(tokens[i]));
                    ++i;
                }
            }
            tokens = std::move(out);
        }
    }
    return tokens;
}

std::string apply_blacklist(std::string_view text, std::span<const std::string> phrases) {
    std::string work(text);
    std::string lower(work.size(), '\0');
    bool removed = true;
    while (removed) {
        removed = false;
        lower.resize(work.size());
        std::transform(work.begin(), work.end(), lower.begin(), ascii_lower);
        for (const auto& phrase : phrases) {
            if (phrase.empty()) {
                continue;
            }
            std::string needle(phrase.size(), '\0');
            std::transform(phrase.begin(), phrase.end(), needle.begin(), ascii_lower);
            const auto pos = lower.find(needle);
            if (pos != std::string::npos) {
                work.erase(pos, needle.size());
                removed = true;
                break;
            }
        }
    }
    // Whitespace re-collapse.
    std::string out;
    out.reserve(work.size());
    bool in_ws = true;  // also trims leading whitespace
    for (char c : work) {
        if (is_ascii_ws(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) {
                out.push_back(' ');
            }
            in_ws = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace chronoalign
