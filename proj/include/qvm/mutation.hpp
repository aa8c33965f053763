#pragma once

namespace qvm::mutation {

// Deliberate convention breaks, used only by the mutation suite to prove that the property
// checks notice a wrong sign or a transposed shift. Off in all normal use.
struct Flags {
    bool flip_moment_sign = false; // moment map uses -eps(h)
    bool lower_shift = false;      // nilpotent shift built below the diagonal
};

Flags& flags();

class Scope {
public:
    explicit Scope(Flags f) : saved_(flags()) { flags() = f; }
    ~Scope() { flags() = saved_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

private:
    Flags saved_;
};

} // namespace qvm::mutation
