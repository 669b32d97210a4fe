#include "doctest.h"

extern "C" {
int capi_status_names(void);
int capi_placement(void);
int capi_schedule(void);
int capi_padding(void);
int capi_oracle_and_bounds(void);
int capi_loads(void);
int capi_simulation(void);
}

TEST_CASE("status names") { CHECK(capi_status_names() == 0); }
TEST_CASE("placement handles") { CHECK(capi_placement() == 0); }
TEST_CASE("schedule handles") { CHECK(capi_schedule() == 0); }
TEST_CASE("padding and filtering") { CHECK(capi_padding() == 0); }
TEST_CASE("oracle and converse") { CHECK(capi_oracle_and_bounds() == 0); }
TEST_CASE("loads and tradeoff") { CHECK(capi_loads() == 0); }
TEST_CASE("simulation") { CHECK(capi_simulation() == 0); }
