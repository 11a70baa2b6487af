#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cat2/oplax.hpp"
#include "cat2/sset.hpp"
#include "cat2/twocat.hpp"

namespace cat2 {

// Where an expected value comes from: a published count, a definitional
// consequence, or an independent computation in this code base.
enum class Tag { literature, immediate, computed };
const char* tag_name(Tag t);

struct Assertion {
    std::string text;
    Tag tag = Tag::computed;
    bool pass = false;
};

enum class Status { pass, fail, budget };
const char* status_name(Status s);

struct ScenarioReport {
    std::string name;
    int criterion = 0;
    std::vector<Assertion> lines;
    Status status = Status::pass;
    std::string error;  // set on budget exhaustion or an unexpected exception
    double seconds = 0;

    bool ok() const { return status == Status::pass; }
};

struct ScenarioInfo {
    std::string name;
    int criterion = 0;
    double limit_seconds = 0;
    std::string summary;
};

const std::vector<ScenarioInfo>& scenario_catalog();

// Objects built while scenarios run, kept for the axiom suite scenario.
class Collector {
public:
    void add(const std::string& what, const SSetPtr& x);
    void add(const std::string& what, const SMap& f);
    void add(const std::string& what, const std::shared_ptr<const BiSSet>& b);
    void add(const std::string& what, const TwoCatPtr& c);
    void add(const std::string& what, const TwoFunctor& f);
    void add(const std::string& what, const OplaxFunctor& f);
    bool empty() const;

    template <class T>
    struct Entry {
        std::string what;
        T value;
    };
    std::vector<Entry<SSetPtr>> ssets;
    std::vector<Entry<SMap>> smaps;
    std::vector<Entry<std::shared_ptr<const BiSSet>>> bissets;
    std::vector<Entry<TwoCatPtr>> twocats;
    std::vector<Entry<TwoFunctor>> functors;
    std::vector<Entry<OplaxFunctor>> oplax;

private:
    std::vector<const void*> seen_;
    bool fresh(const void* p);
};

// Runs a registered scenario; throws UnknownScenario otherwise. Objects are
// recorded into `collector` when given.
ScenarioReport run_scenario(const std::string& name, Collector* collector = nullptr);

std::string format_report(const ScenarioReport& r);

}  // namespace cat2
