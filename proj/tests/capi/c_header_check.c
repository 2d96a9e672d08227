/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* The public header must compile as C. */

#include <stdio.h>

#include "relaysel/relaysel.h"

int main(void) {
    rsel_config* cfg = NULL;
    rsel_status st = rsel_config_create(2, 4, 100.0, 100.0, 3.1622776601683795, &cfg);
    double bound = 0.0;
    if (st != RSEL_OK) {
        fprintf(stderr, "config: %s\n", rsel_last_error());
        return 1;
    }
    st = rsel_outage_bound(RSEL_SCHEME_ORS, cfg, &bound);
    rsel_config_destroy(cfg);
    if (st != RSEL_OK || !(bound > 0.0 && bound < 1.0)) {
        fprintf(stderr, "bound: %s\n", rsel_status_string(st));
        return 1;
    }
    return 0;
}
