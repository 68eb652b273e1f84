#pragma once

// The declarative input format: line-oriented declarations of rings, maps,
// twisted recollements, glued schemes, points and assertions, followed by
// queries. Expressions are kept verbatim so printing round-trips.

#include "sep/scalar.hpp"

#include <cctype>
#include <string>
#include <variant>
#include <vector>

namespace sep {

struct RingDecl {
    std::string name;
    std::vector<std::string> gens;
    std::vector<std::string> relations;
    friend bool operator==(const RingDecl&, const RingDecl&) = default;
};

struct MapDecl {
    std::string name, source, target;
    std::vector<std::pair<std::string, std::string>> images; // gen -> expression
    friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct TwistDecl {
    std::string name, uring;
    std::vector<std::string> invert;
    std::vector<std::pair<std::string, std::string>> tau;
    friend bool operator==(const TwistDecl&, const TwistDecl&) = default;
};

struct SchemeDecl {
    std::string name, u, v, along, rhoU, rhoV;
    friend bool operator==(const SchemeDecl&, const SchemeDecl&) = default;
};

struct PointDecl {
    std::string name;
    char side = 'U';
    std::vector<std::string> ideal;
    friend bool operator==(const PointDecl&, const PointDecl&) = default;
};

struct AssertDecl {
    enum class Kind { Integral, Connected } kind = Kind::Integral;
    std::string target;
    friend bool operator==(const AssertDecl&, const AssertDecl&) = default;
};

struct QueryDecl {
    std::string kind; // canonical name
    std::vector<std::string> args;
    friend bool operator==(const QueryDecl&, const QueryDecl&) = default;
};

using Statement =
    std::variant<RingDecl, MapDecl, TwistDecl, SchemeDecl, PointDecl, AssertDecl, QueryDecl>;

struct Manifest {
    std::vector<Statement> statements;
    friend bool operator==(const Manifest&, const Manifest&) = default;
};

namespace manifest_detail {

inline std::string trim(std::string s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits on commas at nesting depth zero.
inline std::vector<std::string> split_top(const std::string& s)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

class Cursor {
  public:
    Cursor(std::string line, std::size_t lineno) : s_(std::move(line)), line_(lineno) {}

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error("syntax error at line " + std::to_string(line_) + ", column " +
                    std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }

    bool try_eat(const std::string& tok)
    {
        skip_ws();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& tok)
    {
        if (!try_eat(tok)) fail("expected '" + tok + "'");
    }

    std::string ident()
    {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() &&
            (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        else
            fail("expected identifier");
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    // Consumes a balanced group opened by `open` and returns its interior.
    std::string balanced(char open, char close)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != open)
            fail(std::string("expected '") + open + "'");
        int depth = 0;
        std::size_t start = ++pos_;
        for (; pos_ < s_.size(); ++pos_) {
            if (s_[pos_] == open) ++depth;
            if (s_[pos_] == close) {
                if (depth == 0) {
                    std::string inner = s_.substr(start, pos_ - start);
                    ++pos_;
                    return inner;
                }
                --depth;
            }
        }
        fail(std::string("unclosed '") + open + "'");
    }

    std::size_t line() const { return line_; }

  private:
    std::string s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

inline std::vector<std::pair<std::string, std::string>>
parse_arrow_pairs(const std::string& body, std::size_t lineno)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : split_top(body)) {
        std::size_t arrow = std::string::npos;
        int depth = 0;
        for (std::size_t i = 0; i + 1 < item.size(); ++i) {
            if (item[i] == '(' || item[i] == '[' || item[i] == '{') ++depth;
            if (item[i] == ')' || item[i] == ']' || item[i] == '}') --depth;
            if (depth == 0 && item[i] == '-' && item[i + 1] == '>') {
                arrow = i;
                break;
            }
        }
        if (arrow == std::string::npos)
            throw Error("syntax error at line " + std::to_string(lineno) +
                        ": expected 'generator -> expression' in '" + item + "'");
        out.emplace_back(trim(item.substr(0, arrow)), trim(item.substr(arrow + 2)));
    }
    return out;
}

inline std::string canonical_query(const std::string& kind, const Cursor& c)
{
    if (kind == "separated" || kind == "check-separated") return "check-separated";
    if (kind == "separator" || kind == "check-separator") return "check-separator";
    if (kind == "build-separator" || kind == "flat" || kind == "etale" ||
        kind == "apparented" || kind == "identified" || kind == "kernel" || kind == "image")
        return kind;
    c.fail("unknown query '" + kind + "'");
}

} // namespace manifest_detail

inline Manifest parse_manifest(const std::string& text)
{
    using namespace manifest_detail;
    Manifest m;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string raw = text.substr(start, nl == std::string::npos ? nl : nl - start);
        start = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        if (trim(raw).empty()) continue;

        Cursor c(raw, lineno);
        if (c.try_eat("ring")) {
            RingDecl d;
            d.name = c.ident();
            c.expect("=");
            c.expect("QQ");
            for (const auto& g : split_top(c.balanced('[', ']'))) {
                Cursor gc(g, lineno);
                d.gens.push_back(gc.ident());
                if (!gc.at_end()) gc.fail("bad generator name");
            }
            if (c.try_eat("/")) d.relations = split_top(c.balanced('(', ')'));
            if (!c.at_end()) c.fail("unexpected trailing input");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("map")) {
            MapDecl d;
            d.name = c.ident();
            c.expect(":");
            d.source = c.ident();
            c.expect("->");
            d.target = c.ident();
            d.images = parse_arrow_pairs(c.balanced('{', '}'), lineno);
            if (!c.at_end()) c.fail("unexpected trailing input");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("twist")) {
            TwistDecl d;
            d.name = c.ident();
            c.expect("=");
            c.expect("double");
            std::string body = c.balanced('(', ')');
            if (!c.at_end()) c.fail("unexpected trailing input");
            bool have_u = false;
            for (const auto& kv : split_top(body)) {
                Cursor kc(kv, lineno);
                std::string key = kc.ident();
                kc.expect("=");
                if (key == "U") {
                    d.uring = kc.ident();
                    have_u = true;
                    if (!kc.at_end()) kc.fail("bad ring name");
                } else if (key == "invert") {
                    d.invert = split_top(kc.balanced('[', ']'));
                    if (!kc.at_end()) kc.fail("unexpected trailing input");
                } else if (key == "tau") {
                    d.tau = parse_arrow_pairs(kc.balanced('{', '}'), lineno);
                    if (!kc.at_end()) kc.fail("unexpected trailing input");
                } else {
                    kc.fail("unknown key '" + key + "' in double(...)");
                }
            }
            if (!have_u) c.fail("double(...) requires U = <ring>");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("scheme")) {
            SchemeDecl d;
            d.name = c.ident();
            c.expect("=");
            c.expect("glue");
            std::string body = c.balanced('(', ')');
            if (!c.at_end()) c.fail("unexpected trailing input");
            for (const auto& kv : split_top(body)) {
                Cursor kc(kv, lineno);
                std::string key = kc.ident();
                kc.expect("=");
                std::string val = kc.ident();
                if (!kc.at_end()) kc.fail("bad name");
                if (key == "U") d.u = val;
                else if (key == "V") d.v = val;
                else if (key == "along") d.along = val;
                else if (key == "rhoU") d.rhoU = val;
                else if (key == "rhoV") d.rhoV = val;
                else kc.fail("unknown key '" + key + "' in glue(...)");
            }
            for (const auto* req : {&d.u, &d.v, &d.along, &d.rhoU, &d.rhoV})
                if (req->empty()) c.fail("glue(...) requires U, V, along, rhoU, rhoV");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("point")) {
            PointDecl d;
            d.name = c.ident();
            c.expect("=");
            std::string body = c.balanced('(', ')');
            if (!c.at_end()) c.fail("unexpected trailing input");
            auto parts = split_top(body);
            if (parts.size() != 2) c.fail("point needs (U|V, ideal(...))");
            if (parts[0] != "U" && parts[0] != "V") c.fail("point chart must be U or V");
            d.side = parts[0][0];
            Cursor ic(parts[1], lineno);
            ic.expect("ideal");
            d.ideal = split_top(ic.balanced('(', ')'));
            if (!ic.at_end()) ic.fail("unexpected trailing input");
            if (d.ideal.empty()) c.fail("point ideal needs at least one generator");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("assert")) {
            AssertDecl d;
            if (c.try_eat("integral")) d.kind = AssertDecl::Kind::Integral;
            else if (c.try_eat("connected")) d.kind = AssertDecl::Kind::Connected;
            else c.fail("expected 'integral' or 'connected'");
            d.target = c.ident();
            if (!c.at_end()) c.fail("unexpected trailing input");
            m.statements.emplace_back(std::move(d));
        } else if (c.try_eat("query")) {
            QueryDecl d;
            std::string kind;
            // query kinds may contain '-'
            c.skip_ws();
            kind = c.ident();
            while (c.try_eat("-")) kind += "-" + c.ident();
            d.kind = canonical_query(kind, c);
            while (!c.at_end()) d.args.push_back(c.ident());
            std::size_t want = (d.kind == "apparented" || d.kind == "identified") ? 3 : 1;
            if (d.args.size() != want)
                c.fail("query " + d.kind + " expects " + std::to_string(want) +
                       " argument(s)");
            m.statements.emplace_back(std::move(d));
        } else {
            c.fail("unknown declaration");
        }
    }
    return m;
}

inline std::string print_manifest(const Manifest& m)
{
    using namespace manifest_detail;
    std::string out;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s;
    };
    auto join_pairs = [](const std::vector<std::pair<std::string, std::string>>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + v[i].first + " -> " + v[i].second;
        return s;
    };
    for (const auto& st : m.statements) {
        if (const auto* r = std::get_if<RingDecl>(&st)) {
            out += "ring " + r->name + " = QQ[" + join(r->gens) + "]";
            if (!r->relations.empty()) out += " / (" + join(r->relations) + ")";
        } else if (const auto* f = std::get_if<MapDecl>(&st)) {
            out += "map " + f->name + " : " + f->source + " -> " + f->target + " { " +
                   join_pairs(f->images) + " }";
        } else if (const auto* t = std::get_if<TwistDecl>(&st)) {
            out += "twist " + t->name + " = double(U = " + t->uring + ", invert = [" +
                   join(t->invert) + "], tau = { " + join_pairs(t->tau) + " })";
        } else if (const auto* s = std::get_if<SchemeDecl>(&st)) {
            out += "scheme " + s->name + " = glue(U = " + s->u + ", V = " + s->v +
                   ", along = " + s->along + ", rhoU = " + s->rhoU + ", rhoV = " + s->rhoV +
                   ")";
        } else if (const auto* p = std::get_if<PointDecl>(&st)) {
            out += "point " + p->name + " = (" + std::string(1, p->side) + ", ideal(" +
                   join(p->ideal) + "))";
        } else if (const auto* a = std::get_if<AssertDecl>(&st)) {
            out += std::string("assert ") +
                   (a->kind == AssertDecl::Kind::Integral ? "integral " : "connected ") +
                   a->target;
        } else if (const auto* q = std::get_if<QueryDecl>(&st)) {
            out += "query " + q->kind;
            for (const auto& a : q->args) out += " " + a;
        }
        out += "\n";
    }
    return out;
}

} // namespace sep
