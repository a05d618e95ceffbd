#pragma once

#include "proofforge/diagnostic.hpp"
#include "proofforge/signature.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace proofforge::verifier {

// Classifies the verifier's combined output stream into structured
// diagnostics. Total: unmatched error lines degrade to kind=unknown with
// the verbatim message preserved. Deterministic by construction.
[[nodiscard]] std::vector<diagnostic> classify_diagnostics(const std::string& raw_output,
                                                           int exit_code);

// Appends each signature as a body-less declaration so the verifier
// treats the pending goals as assumed. Idempotent; a same-name definition
// that already has a body is a conflict.
[[nodiscard]] std::string declare_bodiless(const std::string& program_text,
                                           const std::vector<method_signature>& signatures);

// Snapshot -> text actually handed to the verifier: definitions matching
// pending signatures lose their bodies, missing ones are appended as
// body-less declarations.
[[nodiscard]] std::string render_for_verification(const std::string& program_text,
                                                  const std::vector<method_signature>& pending);

class client {
public:
    virtual ~client() = default;

    // Runs one verification of `program_text` under `timeout_seconds`.
    // Throws environment_error when the backend itself is unusable
    // (missing executable, unknown scripted digest).
    virtual verifier_report run(const std::string& program_text, int timeout_seconds) = 0;

    // Command line (or equivalent) of the most recent run, recorded into
    // transcripts for reproducibility.
    [[nodiscard]] virtual std::vector<std::string> last_invocation() const { return {}; }

    [[nodiscard]] virtual std::string flavor() const = 0;
};

// Invokes the Dafny CLI as a subprocess with a per-run verification time
// limit. The timeout is additionally enforced with a process kill at
// timeout + 2s grace, so a hung verifier cannot stall the engine.
class dafny_subprocess final : public client {
public:
    explicit dafny_subprocess(std::string executable);

    verifier_report run(const std::string& program_text, int timeout_seconds) override;
    [[nodiscard]] std::vector<std::string> last_invocation() const override { return _last_argv; }
    [[nodiscard]] std::string flavor() const override { return "dafny-subprocess"; }

    [[nodiscard]] const std::string& executable() const { return _executable; }

private:
    std::string _executable;
    std::vector<std::string> _last_argv;
};

// Resolves verdicts by digest of the exact program text. An unknown
// digest is an environment_error, never a silent "Verified" — tests must
// pin full snapshots.
class scripted final : public client {
public:
    scripted() = default;

    void expect(const std::string& program_text, verifier_report report);
    void expect_digest(const std::string& digest, verifier_report report);

    verifier_report run(const std::string& program_text, int timeout_seconds) override;
    [[nodiscard]] std::vector<std::string> last_invocation() const override;
    [[nodiscard]] std::string flavor() const override { return "scripted-mock"; }

    [[nodiscard]] static std::string program_digest(const std::string& program_text);

    // Serialization of the digest table, used by replay task bundles.
    [[nodiscard]] std::string to_json() const;
    [[nodiscard]] static scripted from_json(const std::string& json_text);
    [[nodiscard]] static scripted load_file(const std::string& path);
    void save_file(const std::string& path) const;

private:
    std::map<std::string, verifier_report> _table;
    std::string _last_digest;
};

// Wraps another client and records every (digest, report) pair it sees.
// Used to author scripted tables from a run against a live or rule-based
// backend.
class recording final : public client {
public:
    explicit recording(std::shared_ptr<client> inner) : _inner(std::move(inner)) {}

    verifier_report run(const std::string& program_text, int timeout_seconds) override;
    [[nodiscard]] std::vector<std::string> last_invocation() const override {
        return _inner->last_invocation();
    }
    [[nodiscard]] std::string flavor() const override { return _inner->flavor(); }

    [[nodiscard]] const scripted& table() const { return _table; }

private:
    std::shared_ptr<client> _inner;
    scripted _table;
};

// Picks the Dafny executable from PF_DAFNY_PATH or $PATH. Empty when none
// is resolvable.
[[nodiscard]] std::string resolve_dafny_executable();

} // namespace proofforge::verifier
