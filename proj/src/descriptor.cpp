#include "zadic/descriptor.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "zadic/parse.hpp"

namespace zadic::descriptor {

using fadic::Carrier;
using fadic::CarrierKind;
using fadic::CarrierPtr;
using arith::MPoly;
using arith::Var;

namespace {

// A value that failed to convert: JSON pointer, offset inside a string
// value (0 for the value itself) and message.
struct Located {
    std::string pointer;
    int inner_column = 0;
    std::string message;
};

class Reader {
public:
    [[noreturn]] void fail(const std::string& pointer, const std::string& message, int inner = 0) const
    {
        throw Located{pointer, inner, message};
    }

    const json& field(const json& j, const std::string& pointer, const char* key) const
    {
        if (!j.is_object())
            fail(pointer, "expected an object");
        auto it = j.find(key);
        if (it == j.end())
            fail(pointer, std::string("missing field \"") + key + "\"");
        return *it;
    }

    const json* optional_field(const json& j, const char* key) const
    {
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }

    MPoly element(const json& j, const std::string& pointer) const
    {
        if (j.is_number_integer())
            return MPoly(arith::Rational(j.get<long>()));
        if (!j.is_string())
            fail(pointer, "expected a polynomial string");
        try {
            return arith::parse_mpoly(j.get<std::string>());
        } catch (const ParseError& e) {
            fail(pointer, e.detail(), e.column());
        }
    }

    std::vector<MPoly> elements(const json& j, const std::string& pointer) const
    {
        if (!j.is_array())
            fail(pointer, "expected an array of polynomial strings");
        std::vector<MPoly> out;
        for (size_t i = 0; i < j.size(); ++i)
            out.push_back(element(j[i], pointer + "/" + std::to_string(i)));
        return out;
    }

    Var variable(const std::string& name, const std::string& pointer) const
    {
        auto v = arith::var_index(name);
        if (!v)
            fail(pointer, "unknown variable \"" + name + "\"");
        return *v;
    }

    long prime(const json& j, const std::string& pointer) const
    {
        if (!j.is_number_integer())
            fail(pointer, "expected an integer prime");
        long p = j.get<long>();
        try {
            arith::require_prime(p);
        } catch (const Error& e) {
            fail(pointer, e.what());
        }
        return p;
    }

    std::map<Var, MPoly> images(const json& j, const std::string& pointer) const
    {
        if (!j.is_object())
            fail(pointer, "expected an object mapping variables to polynomials");
        std::map<Var, MPoly> out;
        for (auto it = j.begin(); it != j.end(); ++it) {
            std::string ptr = pointer + "/" + it.key();
            out[variable(it.key(), ptr)] = element(it.value(), ptr);
        }
        return out;
    }

    CarrierPtr shorthand(const std::string& s, const std::string& pointer) const
    {
        if (s == "Q")
            return Carrier::rationals();
        if (s == "Z")
            return Carrier::integers();
        if (s.rfind("Z_(", 0) == 0 && s.back() == ')') {
            try {
                return Carrier::p_local(std::stol(s.substr(3, s.size() - 4)));
            } catch (const std::exception&) {
                fail(pointer, "bad prime in \"" + s + "\"");
            }
        }
        if (s.rfind("Q[", 0) == 0 && s.back() == ']') {
            std::vector<Var> vars;
            std::stringstream in(s.substr(2, s.size() - 3));
            std::string name;
            while (std::getline(in, name, ','))
                vars.push_back(variable(name, pointer));
            return Carrier::polynomials(vars);
        }
        fail(pointer, "unknown carrier \"" + s + "\"");
    }

    CarrierPtr carrier(const json& j, const std::string& pointer) const
    {
        if (j.is_string())
            return shorthand(j.get<std::string>(), pointer);
        const json& kind_j = field(j, pointer, "kind");
        if (!kind_j.is_string())
            fail(pointer + "/kind", "expected a string");
        std::string kind = kind_j.get<std::string>();
        try {
            if (kind == "rationals")
                return Carrier::rationals();
            if (kind == "integers")
                return Carrier::integers();
            if (kind == "p_local_integers")
                return Carrier::p_local(prime(field(j, pointer, "p"), pointer + "/p"));
            if (kind == "polynomials") {
                const json& vs = field(j, pointer, "vars");
                if (!vs.is_array())
                    fail(pointer + "/vars", "expected an array of variable names");
                std::vector<Var> vars;
                for (size_t i = 0; i < vs.size(); ++i) {
                    std::string ptr = pointer + "/vars/" + std::to_string(i);
                    if (!vs[i].is_string())
                        fail(ptr, "expected a variable name");
                    vars.push_back(variable(vs[i].get<std::string>(), ptr));
                }
                return Carrier::polynomials(vars);
            }
            if (kind == "quotient") {
                auto base = carrier(field(j, pointer, "base"), pointer + "/base");
                return Carrier::quotient(base, elements(field(j, pointer, "ideal"), pointer + "/ideal"));
            }
            if (kind == "localized") {
                auto base = carrier(field(j, pointer, "base"), pointer + "/base");
                if (const json* p = optional_field(j, "one_plus"))
                    return Carrier::localized_one_plus(base, elements(*p, pointer + "/one_plus"));
                MPoly g = element(field(j, pointer, "powers_of"), pointer + "/powers_of");
                const json& inv = field(j, pointer, "inverse");
                if (!inv.is_string())
                    fail(pointer + "/inverse", "expected a variable name");
                return Carrier::localized_powers(base, g, variable(inv.get<std::string>(), pointer + "/inverse"));
            }
            if (kind == "tensor") {
                Carrier c;
                c.kind = CarrierKind::Tensor;
                c.base = carrier(field(j, pointer, "left"), pointer + "/left");
                c.right = carrier(field(j, pointer, "right"), pointer + "/right");
                c.over = carrier(field(j, pointer, "over"), pointer + "/over");
                c.left_map = images(field(j, pointer, "left_map"), pointer + "/left_map");
                c.right_map = images(field(j, pointer, "right_map"), pointer + "/right_map");
                const json& vs = field(j, pointer, "vars");
                for (size_t i = 0; i < vs.size(); ++i)
                    c.vars.push_back(variable(vs[i].get<std::string>(), pointer + "/vars/" + std::to_string(i)));
                return std::make_shared<const Carrier>(std::move(c));
            }
        } catch (const InvalidInput& e) {
            fail(pointer, e.what());
        }
        fail(pointer + "/kind", "unknown carrier kind \"" + kind + "\"");
    }

    fadic::RingPresentation presentation(const json& j, const std::string& pointer) const
    {
        auto c = carrier(field(j, pointer, "carrier"), pointer + "/carrier");
        std::vector<MPoly> rod, iod;
        if (const json* r = optional_field(j, "ring_of_def"))
            rod = elements(*r, pointer + "/ring_of_def");
        if (const json* i = optional_field(j, "ideal_of_def"))
            iod = elements(*i, pointer + "/ideal_of_def");
        std::optional<long> p;
        if (const json* pj = optional_field(j, "prime"); pj && !pj->is_null())
            p = prime(*pj, pointer + "/prime");
        try {
            return fadic::make_presentation(c, rod, iod, p);
        } catch (const Error& e) {
            fail(pointer, e.what());
        }
    }

    fadic::AffinoidPresentation affinoid(const json& j, const std::string& pointer) const
    {
        if (j.is_object() && j.contains("ring")) {
            auto ring = presentation(j["ring"], pointer + "/ring");
            auto plus = elements(field(j, pointer, "plus_ring"), pointer + "/plus_ring");
            try {
                return fadic::make_affinoid(ring, plus);
            } catch (const Error& e) {
                fail(pointer, e.what());
            }
        }
        auto ring = presentation(j, pointer);
        auto plus = ring.ring_of_def;
        return fadic::make_affinoid(ring, plus);
    }

    fadic::RingMap ring_map(const json& j, const std::string& pointer) const
    {
        auto src = presentation(field(j, pointer, "source"), pointer + "/source");
        auto tgt = presentation(field(j, pointer, "target"), pointer + "/target");
        auto imgs = images(field(j, pointer, "images"), pointer + "/images");
        fadic::RingMap m;
        try {
            m = fadic::make_ring_map(src, tgt, imgs);
        } catch (const Error& e) {
            fail(pointer, e.what());
        }
        if (const json* c = optional_field(j, "continuity")) {
            fadic::ContinuityCertificate cert;
            for (const auto& lv : *c)
                cert.levels.emplace_back(lv.at(0).get<int>(), lv.at(1).get<int>());
            m.continuity = cert;
        }
        return m;
    }
};

// Byte offsets of every value in a syntactically valid JSON text, keyed by
// JSON pointer.
class PositionIndex {
public:
    explicit PositionIndex(const std::string& text) : s_(text) { value(""); }

    size_t offset(const std::string& pointer) const
    {
        auto it = pos_.find(pointer);
        return it == pos_.end() ? 0 : it->second;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    std::string string()
    {
        size_t start = i_++;
        while (i_ < s_.size() && s_[i_] != '"')
            i_ += s_[i_] == '\\' ? 2 : 1;
        ++i_;
        return json::parse(s_.substr(start, i_ - start)).get<std::string>();
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out += c;
        }
        return out;
    }

    void value(const std::string& pointer)
    {
        skip();
        pos_[pointer] = i_;
        if (i_ >= s_.size())
            return;
        char c = s_[i_];
        if (c == '{') {
            ++i_;
            for (;;) {
                skip();
                if (s_[i_] == '}') {
                    ++i_;
                    return;
                }
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                std::string key = string();
                skip();
                ++i_; // ':'
                value(pointer + "/" + escape(key));
            }
        }
        if (c == '[') {
            ++i_;
            size_t n = 0;
            for (;;) {
                skip();
                if (s_[i_] == ']') {
                    ++i_;
                    return;
                }
                if (s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                value(pointer + "/" + std::to_string(n++));
            }
        }
        if (c == '"') {
            string();
            return;
        }
        while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' &&
               !std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    const std::string& s_;
    size_t i_ = 0;
    std::map<std::string, size_t> pos_;
};

std::pair<int, int> line_column(const std::string& text, size_t offset)
{
    int line = 1, column = 1;
    for (size_t k = 0; k < offset && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

template <class F>
auto with_positions(const std::string& text, F convert)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        auto colon = msg.find("syntax error");
        throw ParseError(line, column, colon == std::string::npos ? msg : msg.substr(colon));
    }
    try {
        return convert(j);
    } catch (const Located& err) {
        PositionIndex index(text);
        size_t off = index.offset(err.pointer);
        if (err.inner_column > 0)
            off += static_cast<size_t>(err.inner_column); // skip the opening quote
        auto [line, column] = line_column(text, off);
        throw ParseError(line, column, (err.pointer.empty() ? "/" : err.pointer) + ": " + err.message);
    }
}

template <class F>
auto without_positions(const json& j, F convert)
{
    try {
        return convert(j);
    } catch (const Located& err) {
        throw ParseError(0, err.inner_column, (err.pointer.empty() ? "/" : err.pointer) + ": " + err.message);
    }
}

json elements_json(const std::vector<MPoly>& xs)
{
    json a = json::array();
    for (const auto& x : xs)
        a.push_back(x.to_string());
    return a;
}

json images_json(const std::map<Var, MPoly>& m)
{
    json o = json::object();
    for (const auto& [v, x] : m)
        o[arith::var_name(v)] = x.to_string();
    return o;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

json to_json(const Carrier& c)
{
    json o;
    switch (c.kind) {
    case CarrierKind::RationalField:
        o["kind"] = "rationals";
        break;
    case CarrierKind::Integers:
        o["kind"] = "integers";
        break;
    case CarrierKind::PLocalInts:
        o["kind"] = "p_local_integers";
        o["p"] = c.prime;
        break;
    case CarrierKind::PolyRingOverQ: {
        o["kind"] = "polynomials";
        json vs = json::array();
        for (Var v : c.vars)
            vs.push_back(arith::var_name(v));
        o["vars"] = vs;
        break;
    }
    case CarrierKind::Quotient:
        o["kind"] = "quotient";
        o["base"] = to_json(*c.base);
        o["ideal"] = elements_json(c.ideal);
        break;
    case CarrierKind::Localized:
        o["kind"] = "localized";
        o["base"] = to_json(*c.base);
        if (c.one_plus) {
            o["one_plus"] = elements_json(c.ideal);
        } else {
            o["powers_of"] = c.element.to_string();
            o["inverse"] = arith::var_name(c.inverse_var);
        }
        break;
    case CarrierKind::Tensor: {
        o["kind"] = "tensor";
        o["left"] = to_json(*c.base);
        o["right"] = to_json(*c.right);
        o["over"] = to_json(*c.over);
        o["left_map"] = images_json(c.left_map);
        o["right_map"] = images_json(c.right_map);
        json vs = json::array();
        for (Var v : c.vars)
            vs.push_back(arith::var_name(v));
        o["vars"] = vs;
        break;
    }
    }
    return o;
}

json to_json(const fadic::RingPresentation& a)
{
    json o;
    o["carrier"] = to_json(*a.carrier);
    o["ring_of_def"] = elements_json(a.ring_of_def);
    o["ideal_of_def"] = elements_json(a.ideal_of_def);
    o["prime"] = a.prime ? json(*a.prime) : json(nullptr);
    return o;
}

json to_json(const fadic::AffinoidPresentation& a)
{
    json o;
    o["ring"] = to_json(a.ring);
    o["plus_ring"] = elements_json(a.plus_ring);
    return o;
}

json to_json(const fadic::RingMap& m)
{
    json o;
    o["source"] = to_json(m.source);
    o["target"] = to_json(m.target);
    o["images"] = images_json(m.images);
    if (m.continuity) {
        json lv = json::array();
        for (const auto& [n, k] : m.continuity->levels)
            lv.push_back(json::array({n, k}));
        o["continuity"] = lv;
    }
    return o;
}

json to_json(const fadic::AdicDomain& d)
{
    return to_json(fadic::to_presentation(d));
}

CarrierPtr carrier_from_json(const json& j)
{
    return without_positions(j, [](const json& x) { return Reader().carrier(x, ""); });
}

fadic::RingPresentation presentation_from_json(const json& j)
{
    return without_positions(j, [](const json& x) { return Reader().presentation(x, ""); });
}

fadic::AffinoidPresentation affinoid_from_json(const json& j)
{
    return without_positions(j, [](const json& x) { return Reader().affinoid(x, ""); });
}

fadic::RingMap ring_map_from_json(const json& j)
{
    return without_positions(j, [](const json& x) { return Reader().ring_map(x, ""); });
}

fadic::RingPresentation parse_presentation(const std::string& text)
{
    return with_positions(text, [](const json& x) { return Reader().presentation(x, ""); });
}

fadic::AffinoidPresentation parse_affinoid(const std::string& text)
{
    return with_positions(text, [](const json& x) { return Reader().affinoid(x, ""); });
}

fadic::RingMap parse_ring_map(const std::string& text)
{
    return with_positions(text, [](const json& x) { return Reader().ring_map(x, ""); });
}

fadic::RingPresentation read_presentation_file(const std::string& path)
{
    return parse_presentation(read_file(path));
}

fadic::AffinoidPresentation read_affinoid_file(const std::string& path)
{
    return parse_affinoid(read_file(path));
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace zadic::descriptor
