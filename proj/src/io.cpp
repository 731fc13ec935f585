#include "wamin/io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace wamin {

namespace {

using Json = nlohmann::ordered_json;

template <Semiring S>
struct WeightJson;

template <>
struct WeightJson<Integers> {
    static Integers::Value parse(const Json& v) {
        if (v.is_number_integer()) return Integers::Value(v.get<long long>());
        if (v.is_number_unsigned()) return Integers::Value(v.get<unsigned long long>());
        if (v.is_string()) {
            const std::string& s = v.get_ref<const std::string&>();
            std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
            if (s.size() == start) throw ParseError("invalid integer weight: " + s);
            for (std::size_t i = start; i < s.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(s[i])))
                    throw ParseError("invalid integer weight: " + s);
            return Integers::Value(s);
        }
        throw ParseError("integer weight expected (decimal strings allowed)");
    }
    static Json emit(const Integers::Value& k) {
        static const Integers::Value lo = std::numeric_limits<long long>::min();
        static const Integers::Value hi = std::numeric_limits<long long>::max();
        if (k >= lo && k <= hi) return Json(k.convert_to<long long>());
        return Json(k.str());
    }
};

template <>
struct WeightJson<MinPlus> {
    static MinPlus::Value parse(const Json& v) {
        if (v.is_number_integer()) return v.get<long long>();
        throw ParseError("min-plus weights must be integers");
    }
    static Json emit(MinPlus::Value k) {
        if (k == MinPlus::infinity) throw std::logic_error("attempt to serialize a zero weight");
        return Json(k);
    }
};

int parse_state(const Json& v, int states, const char* what) {
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ParseError(std::string(what) + ": state id expected");
    long long s = v.get<long long>();
    if (s < 0 || s >= states) throw ParseError(std::string(what) + ": state id out of range");
    return static_cast<int>(s);
}

template <Semiring S>
Automaton<S> parse_typed(const Json& j) {
    constexpr bool boolean = std::is_same_v<S, Boolean>;

    if (!j.at("states").is_number_integer() && !j.at("states").is_number_unsigned())
        throw ParseError("states: integer expected");
    long long states = j.at("states").get<long long>();
    if (states < 0) throw ParseError("states: negative count");

    const Json& alpha = j.at("alphabet");
    if (!alpha.is_array()) throw ParseError("alphabet: array expected");
    std::vector<std::string> letters;
    for (const Json& l : alpha) {
        if (!l.is_string()) throw ParseError("alphabet: letters must be strings");
        letters.push_back(l.get<std::string>());
    }

    Automaton<S> a(static_cast<int>(states), letters);

    auto read_weighted_states = [&](const Json& arr, const char* what, auto apply) {
        if (!arr.is_array()) throw ParseError(std::string(what) + ": array expected");
        std::set<int> seen;
        for (const Json& entry : arr) {
            int s;
            typename S::Value k;
            if constexpr (boolean) {
                s = parse_state(entry, a.states(), what);
                k = true;
            } else {
                if (!entry.is_array() || entry.size() != 2)
                    throw ParseError(std::string(what) + ": [state, weight] expected");
                s = parse_state(entry[0], a.states(), what);
                k = WeightJson<S>::parse(entry[1]);
                if (is_zero<S>(k)) throw ParseError(std::string(what) + ": explicit zero weight");
            }
            if (!seen.insert(s).second)
                throw ParseError(std::string(what) + ": duplicate state " + std::to_string(s));
            apply(s, k);
        }
    };
    read_weighted_states(j.at("initial"), "initial", [&](int s, const typename S::Value& k) {
        a.add_initial(s, k);
    });
    read_weighted_states(j.at("final"), "final", [&](int s, const typename S::Value& k) {
        a.add_final(s, k);
    });

    const Json& trans = j.at("transitions");
    if (!trans.is_array()) throw ParseError("transitions: array expected");
    std::set<std::tuple<int, int, int>> seen;
    for (const Json& entry : trans) {
        std::size_t arity = boolean ? 3 : 4;
        if (!entry.is_array() || entry.size() != arity)
            throw ParseError("transitions: malformed entry");
        int p = parse_state(entry[0], a.states(), "transitions");
        if (!entry[1].is_string()) throw ParseError("transitions: letter must be a string");
        int l = a.letter_id(entry[1].get<std::string>());
        if (l < 0) throw ParseError("transitions: letter not in alphabet");
        typename S::Value k;
        int q;
        if constexpr (boolean) {
            k = true;
            q = parse_state(entry[2], a.states(), "transitions");
        } else {
            k = WeightJson<S>::parse(entry[2]);
            if (is_zero<S>(k)) throw ParseError("transitions: explicit zero weight");
            q = parse_state(entry[3], a.states(), "transitions");
        }
        if (!seen.insert({p, l, q}).second)
            throw ParseError("transitions: duplicate (p, letter, q) triple");
        a.add_transition(p, l, k, q);
    }
    return a;
}

template <Semiring S>
Json serialize_typed(const Automaton<S>& a) {
    constexpr bool boolean = std::is_same_v<S, Boolean>;
    Json j = Json::object();
    j["semiring"] = S::tag();
    j["alphabet"] = a.letters();
    j["states"] = a.states();

    auto weighted_states = [&](const std::map<int, typename S::Value>& table) {
        Json arr = Json::array();
        for (const auto& [s, k] : table) {
            if constexpr (boolean)
                arr.push_back(s);
            else
                arr.push_back(Json::array({s, WeightJson<S>::emit(k)}));
        }
        return arr;
    };
    j["initial"] = weighted_states(a.initial_weights());
    j["final"] = weighted_states(a.final_weights());

    Json trans = Json::array();
    for (const auto& [triple, k] : a.transitions()) {
        const auto& [p, l, q] = triple;
        if constexpr (boolean)
            trans.push_back(Json::array({p, a.letter_name(l), q}));
        else
            trans.push_back(Json::array({p, a.letter_name(l), WeightJson<S>::emit(k), q}));
    }
    j["transitions"] = std::move(trans);
    return j;
}

}  // namespace

AnyAutomaton parse_automaton(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("top-level object expected");
    static const std::set<std::string> keys = {"semiring", "alphabet",  "states",
                                               "initial",  "final", "transitions"};
    for (const auto& [key, value] : j.items())
        if (!keys.contains(key)) throw ParseError("unknown key: " + key);
    for (const auto& key : keys)
        if (!j.contains(key)) throw ParseError("missing key: " + key);
    if (!j.at("semiring").is_string()) throw ParseError("semiring: string tag expected");
    std::string tag = j.at("semiring").get<std::string>();
    try {
        if (tag == "B") return parse_typed<Boolean>(j);
        if (tag == "Z") return parse_typed<Integers>(j);
        if (tag == "min-plus") return parse_typed<MinPlus>(j);
    } catch (const AutomatonError& e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown semiring tag: " + tag);
}

AnyAutomaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_automaton(buf.str());
}

std::string serialize_automaton(const AnyAutomaton& a) {
    Json j = std::visit([](const auto& aut) { return serialize_typed(aut); }, a);
    return j.dump(1) + "\n";
}

void save_automaton(const AnyAutomaton& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << serialize_automaton(a);
}

std::string semiring_tag_of(const AnyAutomaton& a) {
    return std::visit(
        [](const auto& aut) { return std::decay_t<decltype(aut)>::SemiringType::tag(); }, a);
}

std::string format_partition(const StatePartition& p, int n_true) {
    std::string out;
    for (const auto& cls : p.classes) {
        if (cls.size() == 1 && cls.front() >= n_true) continue;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(cls[i]);
        }
        out += '\n';
    }
    return out;
}

StatePartition parse_partition(const std::string& text, int n_true) {
    StatePartition p;
    p.n = n_true + 2;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::vector<int> cls;
        std::string tok;
        while (fields >> tok) {
            try {
                std::size_t used = 0;
                int s = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                cls.push_back(s);
            } catch (const std::exception&) {
                throw ParseError("partition: invalid state id '" + tok + "'");
            }
        }
        if (!cls.empty()) p.classes.push_back(std::move(cls));
    }
    for (const auto& cls : p.classes)
        for (int s : cls)
            if (s < 0 || s >= n_true) throw ParseError("partition: state id out of range");
    p.classes.push_back({n_true});
    p.classes.push_back({n_true + 1});
    p.canonicalize();
    if (!p.valid()) throw ParseError("partition: classes must cover every state exactly once");
    return p;
}

}  // namespace wamin
