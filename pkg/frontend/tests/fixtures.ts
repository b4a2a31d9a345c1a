/** Loader for the recorded service fixtures (see scripts/record_fixtures.py). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  MemoryResponse,
  SceneResponse,
  SessionResponse,
  WhatIfResponse,
} from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), "utf-8")) as T;
}

export const sessionFixture = (): SessionResponse => load("session");
export const sceneFirstFixture = (): SceneResponse => load("scene_first");
export const sceneSecondFixture = (): SceneResponse => load("scene_second");
export const whatIfFixture = (): WhatIfResponse => load("what_if");
export const memoryFixture = (): MemoryResponse => load("memory");
export const memoryMutualFixture = (): MemoryResponse => load("memory_mutual");
export const memoryEmptyFixture = (): MemoryResponse => load("memory_empty");
