#include "rhopi/syntax.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "json.hpp"

namespace rhopi::syntax {

ParseError::ParseError(const std::string& msg, std::size_t l, std::size_t c)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}

namespace {

// ---------------------------------------------------------------------------
// Source preprocessing

struct Source {
    std::string text;                   // main term, comments blanked out
    std::vector<std::pair<std::size_t, std::string>> defs;  // (line, "name = body")
};

std::string strip_comment(const std::string& line) {
    auto pos = line.find("//");
    return pos == std::string::npos ? line : line.substr(0, pos) + std::string(line.size() - pos, ' ');
}

bool is_ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

Source preprocess(std::string_view text) {
    Source src;
    std::size_t start = 0, lineno = 1;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line = strip_comment(std::string(text.substr(start, end - start)));
        auto first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line.compare(first, 4, "def ") == 0) {
            src.defs.emplace_back(lineno, line.substr(first + 4));
            src.text += std::string(line.size(), ' ');
        } else {
            src.text += line;
        }
        src.text += '\n';
        if (end == text.size()) break;
        start = end + 1;
        ++lineno;
    }
    return src;
}

// ---------------------------------------------------------------------------
// Lexer shared by both calculi

class Cursor {
public:
    Cursor(std::string_view text, std::size_t line0 = 1) : text_(text), line0_(line0) {}

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip();
        return pos_ >= text_.size();
    }
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        if (c == '#') fail("bound marker tokens are not accepted");
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (peek() == '#') fail("bound marker tokens are not accepted");
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool peek_ident() { return is_ident_start(peek()); }
    std::string ident() {
        if (!peek_ident()) fail("expected identifier");
        std::size_t b = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(b, pos_ - b));
    }
    bool accept_keyword(std::string_view kw) {
        skip();
        if (text_.substr(pos_, kw.size()) != kw) return false;
        std::size_t e = pos_ + kw.size();
        if (e < text_.size() && is_ident_char(text_[e])) return false;
        pos_ = e;
        return true;
    }
    void expect_end() {
        if (!at_end()) fail("unexpected trailing input");
    }
    std::size_t pos() const { return pos_; }
    void reset(std::size_t p) { pos_ = p; }

    [[noreturn]] void fail(const std::string& msg) {
        skip();
        if (pos_ >= text_.size()) {
            // at end of input, point just past the last token
            while (pos_ > 0 && std::isspace(static_cast<unsigned char>(text_[pos_ - 1]))) --pos_;
        }
        std::size_t line = line0_, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line0_;
};

bool is_keyword(const std::string& s) { return s == "new" || s == "def"; }

// ---------------------------------------------------------------------------
// ρ parser. Binders are parsed as placeholder markers with unique ids above any
// real marker and replaced by concrete fresh names afterwards.

constexpr std::uint32_t kPlaceholderBase = 1u << 30;

using RhoDef = std::variant<rho::Proc, rho::Name>;

class RhoParser {
public:
    RhoParser(Cursor& c, const std::map<std::string, RhoDef>& defs) : c_(c), defs_(defs) {}

    rho::Proc proc() {
        std::vector<rho::Proc> parts{prefix()};
        while (c_.accept('|')) parts.push_back(prefix());
        return parts.size() == 1 ? parts[0] : rho::Proc::par(std::move(parts));
    }

    rho::Name name() {
        if (c_.accept('@')) {
            if (c_.accept('0')) return rho::Name::quote(rho::Proc::nil());
            if (c_.accept('*')) return rho::Name::quote(rho::Proc::drop(name()));
            if (c_.accept('(')) {
                rho::Proc body = proc();
                c_.expect(')');
                return rho::Name::quote(body);
            }
            c_.fail("expected '0', '*' or '(' after '@'");
        }
        if (c_.peek() == '(') {
            c_.expect('(');
            rho::Name n = name();
            c_.expect(')');
            return n;
        }
        if (c_.peek_ident()) {
            std::string id = c_.ident();
            for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                if (it->first == id) return rho::Name::bound(it->second);
            auto d = defs_.find(id);
            if (d != defs_.end()) {
                if (auto* n = std::get_if<rho::Name>(&d->second)) return *n;
                c_.fail("'" + id + "' names a process, not a name");
            }
            c_.fail("unbound identifier '" + id + "'");
        }
        if (c_.peek() == '#') c_.expect('#');
        c_.fail("expected a name");
    }

    std::uint32_t placeholders() const { return next_ - kPlaceholderBase; }

private:
    Cursor& c_;
    const std::map<std::string, RhoDef>& defs_;
    std::vector<std::pair<std::string, std::uint32_t>> scope_;
    std::uint32_t next_ = kPlaceholderBase;

    rho::Proc after_subject(const rho::Name& subject) {
        if (c_.accept('!')) {
            c_.expect('(');
            rho::Proc body = proc();
            c_.expect(')');
            return rho::Proc::lift(subject, body);
        }
        if (c_.accept('?')) {
            c_.expect('(');
            std::optional<std::string> id;
            rho::Name binder;
            if (c_.peek_ident()) {
                std::size_t save = c_.pos();
                std::string s = c_.ident();
                if (c_.peek() == ')') {
                    id = s;
                } else {
                    c_.reset(save);
                }
            }
            if (id) {
                binder = rho::Name::bound(next_);
                scope_.emplace_back(*id, next_++);
            } else {
                binder = name();
            }
            c_.expect(')');
            c_.expect('.');
            rho::Proc body = prefix();
            if (id) scope_.pop_back();
            return rho::Proc::input(subject, binder, body);
        }
        c_.fail("expected '!' or '?' after a name");
    }

    rho::Proc prefix() {
        char ch = c_.peek();
        if (ch == '0') {
            c_.accept('0');
            return rho::Proc::nil();
        }
        if (ch == '*') {
            c_.accept('*');
            return rho::Proc::drop(name());
        }
        if (ch == '@') return after_subject(name());
        if (ch == '(') {
            // Either a parenthesized process or a parenthesized subject name.
            std::size_t save = c_.pos();
            try {
                rho::Name n = name();
                char nx = c_.peek();
                if (nx == '!' || nx == '?') return after_subject(n);
            } catch (const ParseError&) {
            }
            c_.reset(save);
            c_.expect('(');
            rho::Proc p = proc();
            c_.expect(')');
            return p;
        }
        if (c_.peek_ident()) {
            std::size_t save = c_.pos();
            std::string id = c_.ident();
            char nx = c_.peek();
            if (nx == '!' || nx == '?') {
                c_.reset(save);
                return after_subject(name());
            }
            auto d = defs_.find(id);
            if (d != defs_.end()) {
                if (auto* p = std::get_if<rho::Proc>(&d->second)) return *p;
            }
            c_.reset(save);
            c_.fail("'" + id + "' is not a process");
        }
        if (ch == '#') c_.expect('#');
        c_.fail("expected a process");
    }
};

// Replace placeholder markers by concrete fresh names. Placeholders are unique,
// so no scoping is needed here.
rho::Name fill(const rho::Name& x, const std::vector<rho::Name>& names);

rho::Proc fill(const rho::Proc& p, const std::vector<rho::Name>& names) {
    using rho::Proc;
    using rho::ProcKind;
    switch (p.kind()) {
    case ProcKind::Nil: return p;
    case ProcKind::Drop: return Proc::drop(fill(p.name(), names));
    case ProcKind::Lift: return Proc::lift(fill(p.name(), names), fill(p.body(), names));
    case ProcKind::Input:
        return Proc::input(fill(p.name(), names), fill(p.binder(), names), fill(p.body(), names));
    case ProcKind::Par: {
        std::vector<Proc> cs;
        for (const auto& c : p.children()) cs.push_back(fill(c, names));
        return Proc::par(std::move(cs));
    }
    }
    return p;
}

rho::Name fill(const rho::Name& x, const std::vector<rho::Name>& names) {
    if (x.is_bound()) {
        if (x.index() >= kPlaceholderBase) return names.at(x.index() - kPlaceholderBase);
        return x;
    }
    return rho::Name::quote(fill(x.body(), names));
}

void collect_concrete(const rho::Proc& p, std::vector<rho::Name>& out);

bool has_placeholder(const rho::Proc& p);

bool has_placeholder(const rho::Name& x) {
    return x.is_bound() ? x.index() >= kPlaceholderBase : has_placeholder(x.body());
}

bool has_placeholder(const rho::Proc& p) {
    switch (p.kind()) {
    case rho::ProcKind::Nil: return false;
    case rho::ProcKind::Drop: return has_placeholder(p.name());
    case rho::ProcKind::Lift: return has_placeholder(p.name()) || has_placeholder(p.body());
    case rho::ProcKind::Input:
        return has_placeholder(p.name()) || has_placeholder(p.binder()) || has_placeholder(p.body());
    case rho::ProcKind::Par:
        for (const auto& c : p.children())
            if (has_placeholder(c)) return true;
        return false;
    }
    return false;
}

void collect_concrete(const rho::Name& x, std::vector<rho::Name>& out) {
    if (x.is_bound()) return;
    if (!has_placeholder(x)) out.push_back(x);
    collect_concrete(x.body(), out);
}

void collect_concrete(const rho::Proc& p, std::vector<rho::Name>& out) {
    switch (p.kind()) {
    case rho::ProcKind::Nil: break;
    case rho::ProcKind::Drop: collect_concrete(p.name(), out); break;
    case rho::ProcKind::Lift:
        collect_concrete(p.name(), out);
        collect_concrete(p.body(), out);
        break;
    case rho::ProcKind::Input:
        collect_concrete(p.name(), out);
        collect_concrete(p.binder(), out);
        collect_concrete(p.body(), out);
        break;
    case rho::ProcKind::Par:
        for (const auto& c : p.children()) collect_concrete(c, out);
        break;
    }
}

template <class T, class Get>
T resolve_placeholders(const T& t, std::uint32_t count, Get&& get) {
    if (count == 0) return t;
    std::vector<rho::Name> avoid;
    collect_concrete(get(t), avoid);
    std::vector<rho::Name> names;
    for (std::uint32_t i = 0; i < count; ++i) {
        rho::Name f = rho::gen_fresh(avoid);
        names.push_back(f);
        avoid.push_back(f);
    }
    return fill(t, names);
}

std::map<std::string, RhoDef> rho_defs(const Source& src) {
    std::map<std::string, RhoDef> defs;
    for (const auto& [line, body] : src.defs) {
        Cursor c(body, line);
        std::string id = c.ident();
        if (is_keyword(id)) c.fail("keyword used as definition name");
        c.expect('=');
        std::size_t save = c.pos();
        RhoParser np(c, defs);
        try {
            rho::Name n = np.name();
            if (c.at_end() && np.placeholders() == 0) {
                defs[id] = n;
                continue;
            }
        } catch (const ParseError&) {
        }
        c.reset(save);
        RhoParser pp(c, defs);
        rho::Proc p = pp.proc();
        c.expect_end();
        defs[id] = resolve_placeholders(p, pp.placeholders(), [](const rho::Proc& q) { return q; });
    }
    return defs;
}

// ---------------------------------------------------------------------------
// π parser

class PiParser {
public:
    PiParser(Cursor& c, const std::map<std::string, pi::Proc>& defs) : c_(c), defs_(defs) {}

    pi::Proc proc() {
        std::vector<pi::Proc> parts{prefix()};
        while (c_.accept('|')) parts.push_back(prefix());
        return parts.size() == 1 ? parts[0] : pi::Proc::par(std::move(parts));
    }

private:
    Cursor& c_;
    const std::map<std::string, pi::Proc>& defs_;

    std::string atom() {
        if (c_.peek() == '#') c_.expect('#');
        std::string id = c_.ident();
        if (is_keyword(id)) c_.fail("keyword '" + id + "' used as a name");
        return id;
    }

    pi::Proc prefix() {
        char ch = c_.peek();
        if (ch == '0') {
            c_.accept('0');
            return pi::Proc::nil();
        }
        if (ch == '(') {
            c_.accept('(');
            pi::Proc p = proc();
            c_.expect(')');
            return p;
        }
        if (ch == '!') {
            c_.accept('!');
            return pi::Proc::repl(prefix());
        }
        if (c_.accept_keyword("new")) {
            std::string x = atom();
            c_.expect('.');
            return pi::Proc::nu(x, prefix());
        }
        if (c_.peek_ident()) {
            std::string x = atom();
            if (c_.accept('!')) return pi::Proc::out(x, atom());
            if (c_.accept('?')) {
                c_.expect('(');
                std::string y = atom();
                c_.expect(')');
                c_.expect('.');
                return pi::Proc::in(x, y, prefix());
            }
            auto d = defs_.find(x);
            if (d != defs_.end()) return d->second;
            c_.fail("expected '!' or '?' after '" + x + "'");
        }
        if (ch == '#') c_.expect('#');
        c_.fail("expected a process");
    }
};

}  // namespace

rho::Proc parse_rho(std::string_view text) {
    Source src = preprocess(text);
    auto defs = rho_defs(src);
    Cursor c(src.text);
    RhoParser p(c, defs);
    rho::Proc t = p.proc();
    c.expect_end();
    return resolve_placeholders(t, p.placeholders(), [](const rho::Proc& q) { return q; });
}

rho::Name parse_rho_name(std::string_view text) {
    Source src = preprocess(text);
    auto defs = rho_defs(src);
    Cursor c(src.text);
    RhoParser p(c, defs);
    rho::Name n = p.name();
    c.expect_end();
    return resolve_placeholders(n, p.placeholders(), [](const rho::Name& x) { return rho::Proc::drop(x); });
}

pi::Proc parse_pi(std::string_view text) {
    Source src = preprocess(text);
    std::map<std::string, pi::Proc> defs;
    for (const auto& [line, body] : src.defs) {
        Cursor c(body, line);
        std::string id = c.ident();
        if (is_keyword(id)) c.fail("keyword used as definition name");
        c.expect('=');
        PiParser dp(c, defs);
        pi::Proc p = dp.proc();
        c.expect_end();
        defs[id] = p;
    }
    Cursor c(src.text);
    PiParser p(c, defs);
    pi::Proc t = p.proc();
    c.expect_end();
    return t;
}

// ---------------------------------------------------------------------------
// Printers

namespace {

class RhoPrinter {
public:
    explicit RhoPrinter(const Aliases& a) : aliases_(a) {}

    std::string proc(const rho::Proc& p) {
        switch (p.kind()) {
        case rho::ProcKind::Nil: return "0";
        case rho::ProcKind::Drop: return "*" + name(p.name());
        case rho::ProcKind::Lift: return name(p.name()) + "!(" + proc(p.body()) + ")";
        case rho::ProcKind::Input: {
            std::string body = p.body().kind() == rho::ProcKind::Nil ? "0" : "( " + proc(p.body()) + " )";
            return name(p.name()) + "?(" + name(p.binder()) + ")." + body;
        }
        case rho::ProcKind::Par: {
            std::string out;
            for (const auto& c : p.children()) {
                if (!out.empty()) out += " | ";
                out += proc(c);
            }
            return out;
        }
        }
        return "0";
    }

    std::string name(const rho::Name& x) {
        if (x.is_bound()) return "y" + std::to_string(x.index());
        if (!aliases_.empty()) {
            auto it = aliases_.find(rho::canon_name(x));
            if (it != aliases_.end()) return it->second;
        }
        const rho::Proc& b = x.body();
        if (b.kind() == rho::ProcKind::Nil) return "@0";
        if (b.kind() == rho::ProcKind::Drop) return "@" + proc(b);
        return "@(" + proc(b) + ")";
    }

private:
    const Aliases& aliases_;
};

// Marker spelling that cannot collide with a free atom of the printed term.
std::string marker_prefix(const pi::Proc& p) {
    auto atoms = pi::atoms_in_order(p);
    std::string prefix = "y";
    for (;;) {
        bool clash = false;
        for (const auto& a : atoms) {
            if (a.size() > prefix.size() && a.compare(0, prefix.size(), prefix) == 0 &&
                std::all_of(a.begin() + prefix.size(), a.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                clash = true;
        }
        if (!clash) return prefix;
        prefix += "_";
    }
}

class PiPrinter {
public:
    explicit PiPrinter(std::string prefix) : prefix_(std::move(prefix)) {}

    std::string name(const pi::PiName& x) const {
        return x.bound ? prefix_ + std::to_string(x.index) : x.atom;
    }

    std::string proc(const pi::Proc& p, bool tight = false) const {
        switch (p.kind()) {
        case pi::PiKind::Nil: return "0";
        case pi::PiKind::Output: return name(p.name()) + "!" + name(p.second());
        case pi::PiKind::Input: return name(p.name()) + "?(" + name(p.second()) + ")." + proc(p.body(), true);
        case pi::PiKind::New: return "new " + name(p.name()) + " . " + proc(p.body(), true);
        case pi::PiKind::Repl: return "!" + proc(p.body(), true);
        case pi::PiKind::Par: {
            std::string out;
            for (const auto& c : p.children()) {
                if (!out.empty()) out += " | ";
                out += proc(c, true);
            }
            return tight ? "(" + out + ")" : out;
        }
        }
        return "0";
    }

private:
    std::string prefix_;
};

}  // namespace

std::string print(const rho::Proc& p, const Aliases& aliases) { return RhoPrinter(aliases).proc(p); }
std::string print(const rho::Name& x, const Aliases& aliases) { return RhoPrinter(aliases).name(x); }
std::string print(const pi::Proc& p) { return PiPrinter(marker_prefix(p)).proc(p); }
std::string print(const pi::PiName& x) { return PiPrinter("y").name(x); }

Aliases aliases_for(const enc::RenamingPolicy& policy) {
    Aliases a;
    for (const auto& [atom, name] : policy.entries()) a.emplace(rho::canon_name(name), atom);
    return a;
}

Aliases aliases_for(const enc::Encoding& e) {
    Aliases a = aliases_for(e.policy);
    a.emplace(rho::canon_name(e.params.n), "n");
    a.emplace(rho::canon_name(e.params.v), "v");
    a.emplace(rho::canon_name(e.params.x), "x");
    a.emplace(rho::canon_name(e.params.z), "z");
    a.emplace(rho::canon_name(e.params.s), "s");
    return a;
}

namespace {

nlohmann::json policy_json(const enc::RenamingPolicy& policy) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [atom, name] : policy.entries()) j[atom] = print(name);
    return j;
}

}  // namespace

std::string manifest_json(const enc::Encoding& e, bool) {
    nlohmann::json j;
    j["scheme"] = "ns";
    j["params"] = {{"n", print(e.params.n)}, {"v", print(e.params.v)}, {"x", print(e.params.x)},
                   {"z", print(e.params.z)}, {"s", print(e.params.s)}};
    j["policy"] = policy_json(e.policy);
    return j.dump(2);
}

std::string manifest_json(const enc::LegacyParams& ps, const enc::RenamingPolicy& policy, bool) {
    nlohmann::json j;
    j["scheme"] = "mr";
    j["params"] = {{"n", print(ps.n)}, {"p", print(ps.p)}};
    j["policy"] = policy_json(policy);
    return j.dump(2);
}

namespace {

template <class Term, class Printer>
std::string jsonl(const Lts<Term>& lts, Printer&& pr) {
    std::string out;
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
        nlohmann::json j;
        j["id"] = i;
        j["depth"] = lts.depth[i];
        j["expanded"] = static_cast<bool>(lts.expanded[i]);
        j["term"] = pr(lts.states[i]);
        j["succ"] = lts.edges[i];
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace

std::string lts_jsonl(const Lts<rho::Proc>& lts) {
    return jsonl(lts, [](const rho::Proc& p) { return print(p); });
}
std::string lts_jsonl(const Lts<pi::Proc>& lts) {
    return jsonl(lts, [](const pi::Proc& p) { return print(p); });
}

}  // namespace rhopi::syntax
