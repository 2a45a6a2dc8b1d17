// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "facekit/error.hpp"

namespace facekit::xml {

/// Minimal DOM for the cascade reader: elements, attributes and concatenated
/// character data. Comments, processing instructions and the prolog are
/// checked for well-formedness and then dropped.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<Element> children;

    const Element* child(std::string_view n) const noexcept {
        for (const auto& c : children) {
            if (c.name == n) return &c;
        }
        return nullptr;
    }

    std::optional<std::string_view> attribute(std::string_view n) const noexcept {
        for (const auto& [k, v] : attributes) {
            if (k == n) return v;
        }
        return std::nullopt;
    }
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Element parse_document() {
        if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
        skip_misc();
        if (at_end() || peek() != '<') fail("expected root element");
        Element root = parse_element(0);
        skip_misc();
        if (!at_end()) fail("content after root element");
        return root;
    }

private:
    static constexpr int kMaxDepth = 256;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::MalformedXml, what + " at byte " + std::to_string(pos_));
    }

    bool at_end() const noexcept { return pos_ >= src_.size(); }
    char peek() const noexcept { return src_[pos_]; }
    bool starts_with(std::string_view s) const noexcept { return src_.substr(pos_, s.size()) == s; }

    static bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
    static bool is_name_start(char c) noexcept {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' ||
               static_cast<unsigned char>(c) >= 0x80;
    }
    static bool is_name_char(char c) noexcept {
        return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }

    void skip_space() {
        while (!at_end() && is_space(peek())) ++pos_;
    }

    void skip_until(std::string_view terminator, const char* construct) {
        const auto end = src_.find(terminator, pos_);
        if (end == std::string_view::npos) fail(std::string("unterminated ") + construct);
        pos_ = end + terminator.size();
    }

    // Whitespace, comments, processing instructions and DOCTYPE outside the root.
    void skip_misc() {
        for (;;) {
            skip_space();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (starts_with("<!DOCTYPE")) {
                skip_until(">", "DOCTYPE");
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        if (at_end() || !is_name_start(peek())) fail("expected a name");
        const auto start = pos_;
        while (!at_end() && is_name_char(peek())) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    void append_utf8(std::string& out, std::uint32_t cp) {
        if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid character reference");
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    void parse_entity(std::string& out) {
        const auto semi = src_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 12) fail("unterminated entity");
        const auto name = src_.substr(pos_ + 1, semi - pos_ - 1);
        if (name == "lt") out += '<';
        else if (name == "gt") out += '>';
        else if (name == "amp") out += '&';
        else if (name == "quot") out += '"';
        else if (name == "apos") out += '\'';
        else if (name.size() > 1 && name[0] == '#') {
            const bool hex = name[1] == 'x';
            const auto digits = name.substr(hex ? 2 : 1);
            if (digits.empty()) fail("empty character reference");
            std::uint32_t cp = 0;
            for (char c : digits) {
                unsigned d;
                if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
                else if (hex && c >= 'a' && c <= 'f') d = static_cast<unsigned>(c - 'a' + 10);
                else if (hex && c >= 'A' && c <= 'F') d = static_cast<unsigned>(c - 'A' + 10);
                else fail("bad character reference");
                cp = cp * (hex ? 16 : 10) + d;
                if (cp > 0x10FFFF) fail("character reference out of range");
            }
            append_utf8(out, cp);
        } else {
            fail("unknown entity &" + std::string(name) + ";");
        }
        pos_ = semi + 1;
    }

    std::string parse_attribute_value() {
        if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        const char quote = peek();
        ++pos_;
        std::string value;
        while (!at_end() && peek() != quote) {
            if (peek() == '<') fail("'<' in attribute value");
            if (peek() == '&') {
                parse_entity(value);
            } else {
                value += peek();
                ++pos_;
            }
        }
        if (at_end()) fail("unterminated attribute value");
        ++pos_;
        return value;
    }

    Element parse_element(int depth) {
        if (depth > kMaxDepth) fail("nesting too deep");
        ++pos_;  // '<'
        Element el;
        el.name = parse_name();
        for (;;) {
            const auto before = pos_;
            skip_space();
            if (at_end()) fail("unterminated start tag <" + el.name + ">");
            if (starts_with("/>")) {
                pos_ += 2;
                return el;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (pos_ == before) fail("expected whitespace before attribute");
            auto key = parse_name();
            skip_space();
            if (at_end() || peek() != '=') fail("expected '=' after attribute " + key);
            ++pos_;
            skip_space();
            if (el.attribute(key)) fail("duplicate attribute " + key);
            el.attributes.emplace_back(std::move(key), parse_attribute_value());
        }

        for (;;) {
            if (at_end()) fail("missing </" + el.name + ">");
            if (starts_with("</")) {
                pos_ += 2;
                const auto closing = parse_name();
                if (closing != el.name) fail("</" + closing + "> does not close <" + el.name + ">");
                skip_space();
                if (at_end() || peek() != '>') fail("malformed end tag");
                ++pos_;
                return el;
            }
            if (starts_with("<!--")) {
                pos_ += 4;
                skip_until("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                pos_ += 9;
                const auto end = src_.find("]]>", pos_);
                if (end == std::string_view::npos) fail("unterminated CDATA");
                el.text.append(src_.substr(pos_, end - pos_));
                pos_ = end + 3;
            } else if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (peek() == '<') {
                el.children.push_back(parse_element(depth + 1));
            } else if (peek() == '&') {
                parse_entity(el.text);
            } else {
                el.text += peek();
                ++pos_;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Element parse(std::string_view document) { return detail::Parser(document).parse_document(); }

}  // namespace facekit::xml
