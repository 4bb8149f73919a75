#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dode/llode.hpp"

namespace dode {

enum class Move { L, R };

struct TMRule {
    int next;
    int write; // 0, 1 or 3
    Move move;
    bool operator==(const TMRule&) const = default;
};

/// A Turing machine over the tape alphabet {0, 1, 3} with blank 0.
/// Missing delta entries default to a same-state walk-right-and-park
/// rule, which is the stable halt idiom of this two-move step algebra.
class TMSpec {
public:
    TMSpec(int num_states, int initial, std::set<int> accepting = {});

    void set_rule(int state, int symbol, TMRule rule);
    TMRule rule(int state, int symbol) const;
    bool has_rule(int state, int symbol) const;

    int num_states() const { return num_states_; }
    int initial() const { return initial_; }
    const std::set<int>& accepting() const { return accepting_; }

    static TMSpec parse(const std::string& text);
    static TMSpec parse_file(const std::string& path);
    std::string str() const;

private:
    static int symbol_index(int symbol);
    int num_states_;
    int initial_;
    std::set<int> accepting_;
    std::vector<std::array<std::optional<TMRule>, 3>> delta_;
};

/// Tape words: symbols 0/1/3, index 0 nearest the head, trailing blanks
/// trimmed.
using Word = std::vector<int>;

Word word_from_string(const std::string& s); // digits 1 and 3 only
std::string word_to_string(const Word& w);
Word trim_word(Word w);

struct Configuration {
    int state = 0;
    Word left;  // left[0] is the cell just left of the head
    Word right; // right[0] is the cell under the head
    bool operator==(const Configuration&) const = default;
};

Configuration initial_config(const TMSpec& spec, const Word& input);
Configuration tm_step_direct(const TMSpec& spec, const Configuration& c);
Configuration tm_run_direct(const TMSpec& spec, const Word& input, long long steps);

/// Full tape content, leftmost cell first (left reversed ++ right).
Word tape_word(const Configuration& c);

/// Radix-4 word encoding w0/4 + w1/16 + ...; requires digits in {1, 3}.
Dyadic gamma_word(const Word& w);
/// Same sum over {0, 1, 3} words (configuration encoding of runs that
/// touched blanks).
Dyadic gamma_word_raw(const Word& w);
/// Left inverse on the image; throws NotInImage off it (digit 0 or 2).
Word gamma_word_inv(const Dyadic& d);

struct EncodedConfig {
    Dyadic q, lbar, rbar;
    bool operator==(const EncodedConfig&) const = default;
};

EncodedConfig gamma_config(const Configuration& c);

/// One machine step as a 3-component sg-polynomial vector over
/// (q, l, r), essentially linear in all three.
std::vector<Expr> compile_next(const TMSpec& spec);

/// The step function as a length-ODE: solving at x applies Next
/// len(x) - 1 times (an sgb(x) guard skips the x-argument-0 stage), so
/// the value at clock 2^t is exactly Next^t.
LLODESystem compile_exec(const TMSpec& spec);

struct RunResult {
    EncodedConfig config;
    std::optional<Word> output; // gamma_word_inv of the right tape
    std::string decode_error;   // set when output is absent
};

/// Runs the compiled Exec system at clock 2^steps from the initial
/// configuration for `input` and decodes the right tape.
RunResult run_compiled(const TMSpec& spec, const Word& input, const Int& steps);

} // namespace dode
