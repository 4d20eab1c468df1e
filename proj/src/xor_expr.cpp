#include "antilearn/xor_expr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace antilearn {

namespace {

bool is_variable_name(char c) { return c >= 'a' && c <= 'h'; }

// Recursive-descent parser for expr := var | "xor(" expr "," expr ")".
struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r'))
            ++pos;
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument("expected '" + std::string(1, c) + "' at position " +
                                        std::to_string(pos) + " in XOR expression");
        ++pos;
    }

    XorExpr expr() {
        if (peek() == 'x') {
            if (text.compare(pos, 3, "xor") != 0)
                throw std::invalid_argument("expected \"xor(\" at position " + std::to_string(pos) +
                                            " in XOR expression");
            pos += 3;
            expect('(');
            XorExpr lhs = expr();
            expect(',');
            XorExpr rhs = expr();
            expect(')');
            return XorExpr::xor_of(lhs, rhs);
        }
        const char c = peek();
        if (!is_variable_name(c))
            throw std::invalid_argument("expected a variable a..h or \"xor(\" at position " +
                                        std::to_string(pos) + " in XOR expression");
        ++pos;
        return XorExpr::variable(c);
    }
};

}  // namespace

XorExpr XorExpr::variable(char name) {
    if (!is_variable_name(name))
        throw std::invalid_argument("variable '" + std::string(1, name) + "' is outside a..h");
    XorExpr e;
    e.nodes_.push_back(Node{name, -1, -1});
    return e;
}

XorExpr XorExpr::xor_of(const XorExpr& lhs, const XorExpr& rhs) {
    if (lhs.nodes_.empty() || rhs.nodes_.empty())
        throw std::invalid_argument("cannot combine an empty XOR expression");
    XorExpr e;
    const int l = e.append(lhs);
    const int r = e.append(rhs);
    e.nodes_.push_back(Node{0, l, r});
    return e;
}

int XorExpr::append(const XorExpr& other) {
    const int offset = static_cast<int>(nodes_.size());
    for (const Node& n : other.nodes_) {
        Node copy = n;
        if (copy.lhs >= 0) copy.lhs += offset;
        if (copy.rhs >= 0) copy.rhs += offset;
        nodes_.push_back(copy);
    }
    return static_cast<int>(nodes_.size()) - 1;
}

XorExpr XorExpr::parse(std::string_view text) {
    Parser p{text};
    XorExpr e = p.expr();
    p.skip_space();
    if (p.pos != text.size())
        throw std::invalid_argument("trailing characters at position " + std::to_string(p.pos) +
                                    " in XOR expression");
    return e;
}

int XorExpr::eval(const std::map<char, int>& assignment) const {
    if (nodes_.empty()) throw std::invalid_argument("empty XOR expression");
    // Nodes are stored children-first, so a single forward sweep folds the tree.
    std::vector<int> value(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.var != 0) {
            auto it = assignment.find(n.var);
            if (it == assignment.end())
                throw std::invalid_argument("unbound variable '" + std::string(1, n.var) +
                                            "' in XOR expression");
            value[i] = it->second != 0 ? 1 : 0;
        } else {
            value[i] = value[n.lhs] ^ value[n.rhs];
        }
    }
    return value.back();
}

std::vector<char> XorExpr::variables() const {
    std::set<char> seen;
    for (const Node& n : nodes_)
        if (n.var != 0) seen.insert(n.var);
    return {seen.begin(), seen.end()};
}

std::string XorExpr::str() const {
    if (nodes_.empty()) return {};
    std::vector<std::string> text(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.var != 0)
            text[i] = std::string(1, n.var);
        else
            text[i] = "xor(" + text[n.lhs] + "," + text[n.rhs] + ")";
    }
    return text.back();
}

int eval_xor_expr(const XorExpr& expr, const std::map<char, int>& assignment) {
    return expr.eval(assignment);
}

XorExpr pyramid_xor_expr() {
    return XorExpr::parse("xor(xor(xor(a,b),xor(c,d)),xor(xor(e,f),xor(g,h)))");
}

XorExpr random_xor_expr() {
    return XorExpr::parse("xor(xor(xor(d,g),xor(a,d)),xor(xor(h,f),xor(d,b)))");
}

BinaryDataset xor_dataset(const XorExpr& expr, std::string name) {
    BinaryDataset ds;
    ds.name = std::move(name);
    for (char v = 'a'; v <= 'h'; ++v) ds.feature_names.push_back(std::string(1, v));

    ds.samples.reserve(256);
    ds.labels.reserve(256);
    std::map<char, int> assignment;
    for (unsigned pattern = 0; pattern < 256; ++pattern) {
        std::vector<double> row(8);
        for (int bit = 0; bit < 8; ++bit) {
            const int value = (pattern >> (7 - bit)) & 1;  // 'a' is the most significant bit
            row[bit] = value;
            assignment[static_cast<char>('a' + bit)] = value;
        }
        ds.samples.push_back(std::move(row));
        ds.labels.push_back(expr.eval(assignment));
    }
    return ds;
}

BinaryDataset pyramid_xor_dataset() {
    BinaryDataset ds = xor_dataset(pyramid_xor_expr(), "pyramid-xor");
    const auto counts = ds.class_counts();
    if (counts[0] != 128 || counts[1] != 128)
        throw std::logic_error("pyramid-xor is not class balanced");
    return ds;
}

BinaryDataset random_xor_dataset() {
    BinaryDataset ds = xor_dataset(random_xor_expr(), "random-xor");
    const auto counts = ds.class_counts();
    if (counts[0] != 128 || counts[1] != 128)
        throw std::logic_error("random-xor is not class balanced");
    return ds;
}

}  // namespace antilearn
