// Full-stack check: spawn the real session service on a generated benchmark
// with a 5 s exploration gate, then script a session through the controller
// exactly as the page would (suggested, highlight, repeat; stars; finish).
import { execFile, spawn } from 'node:child_process';
import type { ChildProcess } from 'node:child_process';
import { mkdtemp, readFile, rm, writeFile } from 'node:fs/promises';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { promisify } from 'node:util';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ServiceClient } from '../src/api.js';
import { SessionController } from '../src/controller.js';

const run = promisify(execFile);
const sleep = (ms: number) => new Promise((r) => setTimeout(r, ms));

let workDir: string;
let server: ChildProcess | null = null;
let base: string;

async function startServer(cfgPath: string): Promise<string> {
  const child = spawn('qfse', ['serve', '--config', cfgPath]);
  server = child;
  let buffered = '';
  return new Promise<string>((resolve, reject) => {
    const timer = setTimeout(
      () => reject(new Error(`service never came up:\n${buffered}`)),
      60_000,
    );
    const watch = (chunk: Buffer) => {
      buffered += chunk.toString();
      const m = buffered.match(/running on (http:\/\/[\d.]+:\d+)/);
      if (m) {
        clearTimeout(timer);
        resolve(m[1]);
      }
    };
    child.stdout?.on('data', watch);
    child.stderr?.on('data', watch);
    child.on('exit', (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early (${code}):\n${buffered}`));
    });
  });
}

beforeAll(async () => {
  workDir = await mkdtemp(join(tmpdir(), 'qfse-e2e-'));
  await run('qfse', ['synth-bench', '--out', join(workDir, 'bench')]);
  const cfgPath = join(workDir, 'service.json');
  await writeFile(
    cfgPath,
    JSON.stringify({
      corpus_root: join(workDir, 'bench', 'topics'),
      embeddings: join(workDir, 'bench', 'embeddings.txt'),
      log_dir: join(workDir, 'logs'),
      min_explore_seconds: 5,
      port: 0,
      systems: { S1: 'S1', S2: 'S2' },
    }),
  );
  base = await startServer(cfgPath);
  const client = new ServiceClient(base);
  const health = await client.health();
  expect(health.status).toBe('ok');
}, 120_000);

afterAll(async () => {
  if (server && server.exitCode === null) {
    server.kill('SIGTERM');
    await new Promise((r) => server!.once('exit', r));
  }
  await rm(workDir, { recursive: true, force: true });
});

describe('scripted session against the live service', () => {
  it(
    'explores, rates, and finishes; the server log matches the transcript',
    async () => {
      const client = new ServiceClient(base);
      const controller = new SessionController(client);
      const notices: string[] = [];
      controller.onNotice = (t) => notices.push(t);

      const model = await controller.start('e2e-user', 'synth0', 'S1');
      expect(model.initialWordCount).toBeGreaterThanOrEqual(75);
      expect(model.suggestions).toHaveLength(10);
      expect(model.minExploreSeconds).toBe(5);

      // gate still closed: the server must reject and report a countdown
      const early = await controller.finish(5, 4, 3);
      expect(early).not.toBeNull();
      expect(early!.accepted).toBe(false);
      expect(early!.rejected).toBe('min_time_not_met');
      expect(early!.remaining_seconds).toBeGreaterThanOrEqual(1);
      expect(early!.remaining_seconds).toBeLessThanOrEqual(5);
      expect(model.phase).toBe('exploring');
      expect(model.remainingSeconds(Date.now())).toBeGreaterThanOrEqual(1);
      expect(notices.some((n) => n.includes('s of exploration left'))).toBe(true);

      const first = await controller.submitQuery(
        model.suggestions[0],
        'suggested',
      );
      expect(first).not.toBeNull();
      expect(first!.responseText.length).toBeGreaterThan(0);
      await controller.rateEntry(0, 5);
      await controller.rateInitial(4);

      const span = model.initialText.split(/\s+/).slice(0, 4).join(' ');
      const second = await controller.submitQuery(span, 'highlight');
      expect(second).not.toBeNull();
      await controller.rateEntry(1, 3);

      const third = await controller.submitQuery('', 'repeat');
      expect(third).not.toBeNull();
      // the server reuses the previous query for a repeat
      expect(third!.queryText).toBe(span);
      await controller.rateEntry(2, 2);

      while (model.remainingSeconds(Date.now()) > 0) {
        await sleep(250);
      }
      expect(controller.openQuestionnaire()).toBe(true);
      const done = await controller.finish(5, 4, 3);
      expect(done).not.toBeNull();
      expect(done!.accepted).toBe(true);
      expect(model.phase).toBe('done');

      const log = await client.log(model.sessionId);
      expect(log.source).toBe('human');
      expect(log.interactions).toHaveLength(3);
      expect(log.interactions.map((i) => i.query_type)).toEqual([
        'suggested',
        'highlight',
        'repeat',
      ]);
      expect(log.ratings.r1).toBe(4);
      expect(log.ratings.r2).toEqual([5, 3, 2]);
      expect(log.ratings.r3).toBe(5);
      expect(log.ratings.r4a).toBe(4);
      expect(log.ratings.r4b).toBe(3);

      // the file the service wrote is the same record the API returns
      const onDisk = JSON.parse(await readFile(done!.log_path!, 'utf-8'));
      expect(onDisk).toEqual(log);
    },
    90_000,
  );
});
