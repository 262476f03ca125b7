namespace pantskit {}
